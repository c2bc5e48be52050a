#include "doctest.h"
#include "support.hpp"

using namespace xnf;
using xnf::testing::Gen;

namespace {
GaussianRational q(const char* s) { return GaussianRational::parse(s); }
LaurentPoly xpow(int e, GaussianRational c = 1) { return LaurentPoly::monomial(c, e); }
}  // namespace

TEST_CASE("gaussian rational arithmetic") {
  CHECK(gq_arith(q("1/2+i"), q("1/2-i"), FieldOp::mul) == q("5/4"));
  CHECK(gq_arith(q("0"), q("3/7"), FieldOp::add) == q("3/7"));
  CHECK(gq_arith(q("1+i"), q("1-i"), FieldOp::div) == GaussianRational::i());
  CHECK(q("1/2+i") * q("2-3*i") == q("4+1/2*i"));
  CHECK_THROWS_AS(gq_arith(q("1"), q("0"), FieldOp::div), ArithmeticError);
}

TEST_CASE("gaussian rational canonical form and text") {
  CHECK(q("2/4").re() == Rational(1, 2));
  CHECK(q("-6/4*i").im() == Rational(-3, 2));
  for (const char* s : {"0", "3/7", "-1", "i", "-i", "1/2*i", "-5/3*i", "1+i", "1/2-3/4*i", "-2+i"})
    CHECK(q(s).str() == s);
  CHECK(q(" 1 / 2 + 3 * i ").str() == "1/2+3*i");
  CHECK(q("i+2").str() == "2+i");
  CHECK_THROWS_AS(q(""), UsageError);
  CHECK_THROWS_AS(q("1+2"), UsageError);
  CHECK_THROWS_AS(q("1/"), UsageError);
  CHECK_THROWS_AS(q("1*j"), UsageError);
  CHECK_THROWS_AS(q("1/0"), ArithmeticError);
}

TEST_CASE("field axioms on random triples") {
  Gen g(11);
  for (int t = 0; t < 300; ++t) {
    auto a = g.gq(), b = g.gq(), c = g.gq();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == GaussianRational());
    if (!a.is_zero()) CHECK(a * a.inverse() == GaussianRational(1));
    CHECK(GaussianRational::parse(a.str()) == a);
  }
}

TEST_CASE("laurent polynomial arithmetic") {
  LaurentPoly f = xpow(-1) + xpow(0), g = xpow(1) - xpow(0);
  CHECK(lp_arith(f, g, RingOp::mul) == xpow(1) - xpow(-1));
  CHECK(lp_arith(f, LaurentPoly(), RingOp::mul).is_zero());
  CHECK(lp_arith(xpow(2), xpow(-2), RingOp::mul) == LaurentPoly(1));
  CHECK(lp_arith(f, g, RingOp::add) == xpow(-1) + xpow(1));
  CHECK(xpow(-2).derivative() == xpow(-3, -2));
  CHECK((xpow(3, 2) + xpow(0, 5)).euler() == xpow(3, 6));
}

TEST_CASE("taylor predicate") {
  CHECK(lp_is_taylor(xpow(2) + LaurentPoly(3)));
  CHECK_FALSE(lp_is_taylor(xpow(-1)));
  CHECK(lp_is_taylor(LaurentPoly()));
}

TEST_CASE("laurent ring axioms and degree additivity") {
  Gen g(12);
  for (int t = 0; t < 200; ++t) {
    auto a = g.laurent(-3, 3), b = g.laurent(-3, 3), c = g.laurent(-3, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (!a.is_zero() && !b.is_zero()) {
      CHECK((a * b).min_exponent() == a.min_exponent() + b.min_exponent());
      CHECK((a * b).max_exponent() == a.max_exponent() + b.max_exponent());
    }
  }
}

TEST_CASE("euler solve examples") {
  auto r = lp_euler_solve(xpow(2), -1);
  CHECK(r.f == xpow(2));
  CHECK(r.residual.is_zero());
  r = lp_euler_solve(xpow(1), -1);
  CHECK(r.f.is_zero());
  CHECK(r.residual == xpow(1));
  r = lp_euler_solve(LaurentPoly(), q("3/2+i"));
  CHECK(r.f.is_zero());
  CHECK(r.residual.is_zero());
}

TEST_CASE("euler solve postcondition on random data") {
  Gen g(13);
  for (int t = 0; t < 300; ++t) {
    LaurentPoly gpoly = g.laurent(-4, 4, 5);
    GaussianRational s = g.coin() ? GaussianRational(g.uniform(-4, 4)) : g.gq();
    auto r = lp_euler_solve(gpoly, s);
    CHECK(r.f.euler() + r.f * s + r.residual == gpoly);
    for (const auto& [e, c] : r.residual.terms()) CHECK((s + GaussianRational(e)).is_zero());
    if (s.is_integer()) CHECK(r.f.coeff(static_cast<int>(-s.re().get_num().get_si())).is_zero());
  }
}
