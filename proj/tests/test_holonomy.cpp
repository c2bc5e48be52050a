#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "holonomy_oracle.hpp"

using namespace xnf;
using xnf::testing::Gen;

namespace {

using xnf::testing::kPi;
using xnf::testing::kTwoPiI;
using xnf::testing::richardson_c2;

GaussianRational q(const char* s) { return GaussianRational::parse(s); }
TransverseSeries mono(const Shape& s, const Exponent& k, GaussianRational c = 1, int e = 0) {
  return TransverseSeries::monomial(s, k, LaurentPoly::monomial(c, e));
}
VectorField with_b(const Shape& s, std::vector<TransverseSeries> b) { return {TransverseSeries::x(s), std::move(b)}; }

VectorField resonant_example(int d) {
  Shape s{1, d, {}};
  return with_b(s, {mono(s, {1}, -1) + mono(s, {2}, 1, 1)});
}

double distance(const Point& a, const Point& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("linear holonomy") {
  Shape s{1, 3, {}};
  auto h = holonomy_jet(with_b(s, {mono(s, {1}, q("i"))}), 3);
  CHECK(std::abs(h.coeff(0, {1}) - std::exp(-2 * kPi)) < 1e-8);
  CHECK(std::abs(h.coeff(0, {2})) < 1e-12);
  h = holonomy_jet(with_b(s, {mono(s, {1}, -1)}), 3);
  CHECK(std::abs(h.coeff(0, {1}) - 1.0) < 1e-9);
}

TEST_CASE("linear exactness on diagonal fields") {
  Gen g(61);
  for (int t = 0; t < 10; ++t) {
    Shape s{2, 2, {}};
    std::vector<GaussianRational> mu{g.gq(true, 3, 4), g.gq(true, 3, 4)};
    NumericOptions opt;
    auto h = holonomy_jet(with_b(s, {mono(s, {1, 0}, mu[0]), mono(s, {0, 1}, mu[1])}), 2, opt);
    for (int i = 0; i < 2; ++i) {
      const Complex expected = std::exp(kTwoPiI * mu[static_cast<std::size_t>(i)].to_complex());
      CHECK(std::abs(h.coeff(i, unit_exponent(2, i)) - expected) < 10 * opt.tol * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("resonant example against the oracle") {
  const Complex oracle = richardson_c2(1e-3);
  CHECK(std::abs(oracle - kTwoPiI) < 1e-6);
  auto h = holonomy_jet(resonant_example(6), 6);
  CHECK(std::abs(h.coeff(0, {1}) - 1.0) < 1e-9);
  CHECK(std::abs(h.coeff(0, {2}) - oracle) < 1e-6);
  CHECK(std::abs(h.coeff(0, {2}) - kTwoPiI) < 1e-7);
  // Closed form z / (1 - 2 pi i z).
  for (int k = 3; k <= 6; ++k) {
    Complex expected = std::pow(kTwoPiI, k - 1);
    CHECK(std::abs(h.coeff(0, {k}) - expected) < 1e-7 * std::abs(expected));
  }
}

TEST_CASE("path lifting") {
  Shape s{1, 3, {}};
  Point z0{{0.1, 0.02}};
  CHECK(distance(path_lift(with_b(s, {TransverseSeries(s)}), z0, {PathSegment::radial(1, 3, 0.2)}), z0) < 1e-14);
  auto up = path_lift(with_b(s, {mono(s, {1})}), z0, {PathSegment::radial(1, std::exp(1.0), 0)});
  CHECK(std::abs(up[0] - z0[0] * std::exp(1.0)) < 1e-9);
  VectorField lin = with_b(s, {mono(s, {1}, q("1/3+1/2*i"))});
  auto around = path_lift(lin, z0, {PathSegment::arc(1, 0, 1)});
  CHECK(std::abs(around[0] - holonomy_jet(lin, 1).coeff(0, {1}) * z0[0]) < 1e-9);
  // x z = w solves dw/dt = 2 pi i w^2, which has a pole at t = 1/2 from w = -i/pi.
  CHECK_THROWS_AS(path_lift(resonant_example(3), {{0, -1 / kPi}}, {PathSegment::arc(1, 0, 1)}), EscapeError);
}

TEST_CASE("jet transport matches finite differences of point lifts") {
  Shape s{2, 3, {}};
  VectorField x = with_b(s, {mono(s, {1, 0}, q("1/3")) + mono(s, {0, 2}, 1, 1),
                             mono(s, {0, 1}, q("-1/2+i")) + mono(s, {1, 0}, 1, 1) + mono(s, {1, 1})});
  auto h = holonomy_jet(x, 3);
  const double eps = 1e-5;
  for (int l = 0; l < 2; ++l) {
    Point plus{0, 0}, minus{0, 0};
    plus[static_cast<std::size_t>(l)] = eps;
    minus[static_cast<std::size_t>(l)] = -eps;
    auto a = path_lift(x, plus, {PathSegment::arc(1, 0, 1)});
    auto b = path_lift(x, minus, {PathSegment::arc(1, 0, 1)});
    for (int i = 0; i < 2; ++i) {
      Complex fd = (a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]) / (2 * eps);
      CHECK(std::abs(fd - h.coeff(i, unit_exponent(2, l))) < 1e-5);
    }
  }
}

TEST_CASE("winding composition") {
  VectorField x = resonant_example(5);
  NumericOptions opt;
  auto once = holonomy_jet(x, 5, opt);
  auto twice = holonomy_jet(x, 5, opt, 2);
  CHECK((twice - compose(once, once)).max_abs() < 1e-9 * twice.max_abs());
  CHECK(std::abs(twice.coeff(0, {2}) - 2.0 * kTwoPiI) < 1e-7);
}

TEST_CASE("conjugacy residual") {
  VectorField x = resonant_example(4);
  Shape s = x.shape();
  CHECK(conjugacy_residual(x, Automorphism::identity(s), 4) < 1e-8);
  Automorphism scale({TransverseSeries::x(s), {mono(s, {1}, 2)}});
  CHECK(conjugacy_residual(x, scale, 4) < 1e-7);

  Gen g(62);
  Shape s2{2, 3, {}};
  VectorField x2 = with_b(s2, {mono(s2, {1, 0}, q("-1")) + mono(s2, {1, 1}, q("1/2"), 1),
                               mono(s2, {0, 1}, q("1/2+i")) + mono(s2, {2, 0}, q("i"), 2)});
  for (int t = 0; t < 5; ++t) {
    Automorphism psi = exp(g.flat_field(s2, 2));
    CHECK(conjugacy_residual(x2, psi, 3) < 1e-6);
  }
}

TEST_CASE("transport of a conjugacy") {
  VectorField x = resonant_example(6);
  Shape s = x.shape();
  const Complex x0 = std::polar(0.7, 0.4);
  const Point z0{{0.01, -0.005}};
  auto same = transport_conjugacy(x, x, HolonomyJet::identity(1, 6), x0, z0);
  CHECK(distance(same, z0) < 1e-9);

  // psi carries Y-leaves to X-leaves, so its inverse is the conjugacy to transport.
  Automorphism psi({TransverseSeries::x(s), {mono(s, {1}, 2) + mono(s, {2}, q("1/2"), 1)}});
  VectorField y = pushforward(psi, x);
  Automorphism inv = invert(psi);
  auto phi = HolonomyJet::from_automorphism(inv);
  auto moved = transport_conjugacy(x, y, phi, x0, z0);
  CHECK(distance(moved, apply_point(inv, x0, z0)) < 1e-8);

  // Scaling does not conjugate this holonomy to itself: the result depends on the winding.
  HolonomyJet doubling = HolonomyJet::identity(1, 6);
  doubling.coeffs[0][{1}] = 2.0;
  auto w0 = transport_conjugacy(x, x, doubling, x0, z0, {}, 0);
  auto w1 = transport_conjugacy(x, x, doubling, x0, z0, {}, 1);
  CHECK(distance(w0, w1) > 1e-6);
}
