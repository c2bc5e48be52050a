#pragma once

// Seeded random instances shared by the unit and acceptance tests.

#include <random>

#include "xnf/lie.hpp"

namespace xnf::testing {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Rational rational(int num = 5, int den = 4) {
    Rational r(uniform(-num, num), uniform(1, den));
    r.canonicalize();
    return r;
  }

  GaussianRational gq(bool complex = true, int num = 5, int den = 4) {
    return {rational(num, den), complex && coin() ? rational(num, den) : Rational(0)};
  }

  GaussianRational nonzero_gq(bool complex = true) {
    GaussianRational c;
    while (c.is_zero()) c = gq(complex);
    return c;
  }

  LaurentPoly laurent(int lo, int hi, int max_terms = 3, bool complex = true) {
    LaurentPoly p;
    const int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) p += LaurentPoly::monomial(gq(complex), uniform(lo, hi));
    return p;
  }

  /// Sparse series with z-order >= min_order and x-exponents in [lo, hi].
  TransverseSeries series(const Shape& shape, int min_order, int lo, int hi, int max_terms = 4, bool complex = true) {
    TransverseSeries s(shape);
    const int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) {
      int deg = uniform(min_order, shape.degree_cap);
      auto exps = exponents_of_degree(shape.n, deg);
      s.add_term(exps[static_cast<std::size_t>(uniform(0, static_cast<int>(exps.size()) - 1))],
                 laurent(lo, hi, 2, complex));
    }
    return s;
  }

  /// A field with every component of z-order >= min_order.
  VectorField field(const Shape& shape, int min_order, int lo, int hi, int max_terms = 4, bool complex = true) {
    std::vector<TransverseSeries> b;
    for (int i = 0; i < shape.n; ++i) b.push_back(series(shape, min_order, lo, hi, max_terms, complex));
    return {series(shape, min_order, lo, hi, max_terms, complex), std::move(b)};
  }

  /// 1-flat field with Taylor coefficients: nilpotent, so exp applies. The
  /// x-component is zero unless `move_x`, in which case it lies in m^2.
  VectorField flat_field(const Shape& shape, int max_terms = 3, bool move_x = false) {
    std::vector<TransverseSeries> b;
    for (int i = 0; i < shape.n; ++i) b.push_back(series(shape, 2, 0, 2, max_terms));
    return {move_x ? series(shape, 2, 0, 2, max_terms) : TransverseSeries(shape), std::move(b)};
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace xnf::testing
