#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xnf/coeff.hpp"

namespace xnf {

/// Multi-index over z_1..z_n. Series exponents are nonnegative; the
/// monomial-field index K of z^K z_j d/dz_j may carry one entry equal to -1.
using Exponent = std::vector<int>;

int total_degree(const Exponent& k);
Exponent unit_exponent(int n, int i);
/// All K in N^n with |K| == degree, in ascending gr.lex order.
std::vector<Exponent> exponents_of_degree(int n, int degree);

/// Ascending graded lexicographic order: |K| first, then the first
/// differing entry decides (larger entry is greater).
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};
std::strong_ordering grlex_compare(const Exponent& a, const Exponent& b);

/// Ring in which a series lives: n transverse variables, truncation modulo
/// m^{degree_cap+1}, and optionally x-truncation modulo x^{x_cap+1}. The
/// x-truncated ring only admits Taylor coefficients, where it is an ideal
/// quotient and every product stays exact.
struct Shape {
  int n = 1;
  int degree_cap = 1;
  std::optional<int> x_cap;

  friend bool operator==(const Shape&, const Shape&) = default;
  std::string str() const;
};

void require_same_shape(const Shape& a, const Shape& b, const char* where);

/// Index (K, j) of the monomial field z^K z_j d/dz_j; j is 0-based.
struct VectorMonomialIndex {
  Exponent k;
  int j = 0;

  /// Exponent of the z-monomial multiplying d/dz_j, i.e. K + e_j.
  Exponent monomial() const;
  bool valid() const;
  friend bool operator==(const VectorMonomialIndex&, const VectorMonomialIndex&) = default;
};

/// Total order on (K, j): gr.lex on K, ties broken by ascending j.
std::strong_ordering grlex_compare(const VectorMonomialIndex& a, const VectorMonomialIndex& b);

/// Truncated D_{r,R}-transversely formal series: sum of f_K(x) z^K with
/// |K| <= degree_cap and Laurent-polynomial coefficients.
class TransverseSeries {
 public:
  using TermMap = std::map<Exponent, LaurentPoly, GrlexLess>;

  explicit TransverseSeries(Shape shape) : shape_(std::move(shape)) { validate_shape(); }

  static TransverseSeries constant(const Shape& shape, const LaurentPoly& c);
  static TransverseSeries x(const Shape& shape);
  static TransverseSeries z(const Shape& shape, int i);
  static TransverseSeries monomial(const Shape& shape, const Exponent& k, const LaurentPoly& c);

  const Shape& shape() const { return shape_; }
  int n() const { return shape_.n; }
  int degree_cap() const { return shape_.degree_cap; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly coeff(const Exponent& k) const;

  /// Accumulates c z^k; silently drops terms beyond the caps.
  void add_term(const Exponent& k, const LaurentPoly& c);

  TransverseSeries& operator+=(const TransverseSeries& o);
  TransverseSeries& operator-=(const TransverseSeries& o);
  TransverseSeries& operator*=(const GaussianRational& c);
  friend TransverseSeries operator+(TransverseSeries a, const TransverseSeries& b) { return a += b; }
  friend TransverseSeries operator-(TransverseSeries a, const TransverseSeries& b) { return a -= b; }
  friend TransverseSeries operator-(TransverseSeries a) { return a *= GaussianRational(-1); }
  friend TransverseSeries operator*(TransverseSeries a, const GaussianRational& c) { return a *= c; }
  friend TransverseSeries operator*(const GaussianRational& c, TransverseSeries a) { return a *= c; }
  friend TransverseSeries operator*(const TransverseSeries& a, const TransverseSeries& b);
  friend bool operator==(const TransverseSeries& a, const TransverseSeries& b) {
    return a.shape_ == b.shape_ && a.terms_ == b.terms_;
  }

  /// Multiplies every coefficient by a function of x.
  TransverseSeries times(const LaurentPoly& c) const;
  /// Multiplies by c z^k; the fast path for monomial derivations.
  TransverseSeries times_monomial(const Exponent& k, const LaurentPoly& c) const;

  TransverseSeries d_dx() const;
  TransverseSeries d_dz(int i) const;

  /// Smallest |K| carrying a nonzero coefficient; nullopt for the zero series.
  std::optional<int> madic_order() const;
  bool is_taylor() const;
  /// The part of total z-degree exactly `degree`.
  TransverseSeries homogeneous(int degree) const;
  /// The same series viewed in another ring; terms beyond the new caps are dropped.
  TransverseSeries reshaped(const Shape& target) const;

  std::complex<double> evaluate(std::complex<double> x, const std::vector<std::complex<double>>& z) const;

  /// Canonical text, e.g. `(1/2+1/3*i)*x^-2*z1^2*z2`; "0" for the zero series.
  std::string str() const;

 private:
  void validate_shape() const;
  bool admits(const Exponent& k) const;
  LaurentPoly clip(LaurentPoly c) const;

  Shape shape_;
  TermMap terms_;
};

enum class SeriesOp { add, mul };
TransverseSeries ts_arith(const TransverseSeries& f, const TransverseSeries& g, SeriesOp op);
std::optional<int> ts_madic_order(const TransverseSeries& f);
bool ts_is_taylor(const TransverseSeries& f);

// Shared term formatting for series and vector fields.
std::string format_monomial(int x_exponent, const Exponent& k);
/// Appends `c*factors` to a signed sum; `factors` may be empty.
void append_signed_term(std::string& out, const GaussianRational& c, const std::string& factors);

}  // namespace xnf
