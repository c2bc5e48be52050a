#include "doctest.h"
#include "support.hpp"
#include "xnf/resonance.hpp"

using namespace xnf;
using xnf::testing::Gen;

namespace {

GaussianRational q(const char* s) { return GaussianRational::parse(s); }

// Independent oracle: search sum p_i mu_i = mu_j + q directly over p, j, q.
bool brute_negative_resonance(const EigenData& mu, int max_p) {
  const int n = static_cast<int>(mu.size());
  for (int total = 1; total <= max_p; ++total)
    for (const auto& p : exponents_of_degree(n, total)) {
      GaussianRational s;
      for (int i = 0; i < n; ++i) s += mu[static_cast<std::size_t>(i)] * GaussianRational(p[static_cast<std::size_t>(i)]);
      for (int j = 0; j < n; ++j) {
        GaussianRational diff = s - mu[static_cast<std::size_t>(j)];
        if (diff.is_integer() && diff.re() >= 1) return true;
      }
    }
  return false;
}

}  // namespace

TEST_CASE("lattice indices") {
  auto l = lattice_indices(2, 0, 1);
  CHECK(l == std::vector<Exponent>{{-1, 1}, {0, 0}, {1, -1}, {-1, 2}, {0, 1}, {1, 0}, {2, -1}});
  for (const auto& k : lattice_indices(3, 1, 4)) {
    CHECK(total_degree(k) >= 1);
    CHECK(total_degree(k) <= 4);
    int negatives = 0;
    for (int v : k) negatives += v < 0;
    CHECK(negatives <= 1);
  }
}

TEST_CASE("enumerate resonances examples") {
  auto r = enumerate_resonances({q("-1")}, 3);
  REQUIRE(r.resonant.size() == 3);
  for (int k = 1; k <= 3; ++k) {
    CHECK(r.resonant[static_cast<std::size_t>(k - 1)].k == Exponent{k});
    CHECK(r.resonant[static_cast<std::size_t>(k - 1)].x_exp == k);
  }
  CHECK_FALSE(r.negative);

  r = enumerate_resonances({q("i")}, 5);
  CHECK(r.resonant.empty());
  CHECK_FALSE(r.negative);

  r = enumerate_resonances({q("1/2"), q("-3")}, 5);
  REQUIRE(r.negative);
  CHECK(r.negative->p == Exponent{2, 0});
  CHECK(r.negative->j == 1);
  CHECK(r.negative->q == 4);
  for (const auto& ri : r.resonant) {
    CHECK(weighted_sum({q("1/2"), q("-3")}, ri.k) == GaussianRational(ri.s));
    CHECK(ri.s <= 0);
  }
}

TEST_CASE("ntnr decision examples") {
  CHECK(decide_ntnr({q("-1/3"), q("-1/2")}).holds);
  auto d = decide_ntnr({q("1/2"), q("-3")});
  CHECK_FALSE(d.holds);
  REQUIRE(d.witness);
  CHECK(d.witness->p == Exponent{2, 0});
  CHECK(d.witness->q == 4);
  CHECK(decide_ntnr({q("i")}).holds);
  CHECK(decide_ntnr({q("-1")}).holds);
  CHECK_FALSE(decide_ntnr({q("1/3")}).holds);
  auto big = decide_ntnr({q("-1"), q("-2"), q("-3"), q("-1/2+i")}, 6);
  CHECK_FALSE(big.exact);
  CHECK(big.search_bound == 6);
}

TEST_CASE("ntnr agrees with brute force on random eigenvalues") {
  Gen g(41);
  for (int t = 0; t < 300; ++t) {
    const int n = g.uniform(1, 3);
    EigenData mu;
    for (int i = 0; i < n; ++i) mu.push_back(g.coin(0.7) ? GaussianRational(g.rational(6, 3)) : g.gq(true, 4, 3));
    auto d = decide_ntnr(mu);
    CHECK(d.exact);
    const bool brute = brute_negative_resonance(mu, 14);
    // Brute force at a finite bound can only miss resonances, never invent them.
    if (brute) CHECK_FALSE(d.holds);
    if (!d.holds) {
      REQUIRE(d.witness);
      CHECK(weighted_sum(mu, d.witness->k) == GaussianRational(d.witness->q));
      auto at_bound = enumerate_resonances(mu, std::max(1, total_degree(d.witness->k)));
      REQUIRE(at_bound.negative);
      CHECK(at_bound.negative->k == d.witness->k);
      if (total_degree(d.witness->k) < 14) CHECK(brute);
    }
  }
}

TEST_CASE("ntnr on cones with lines and full planes") {
  // Generators spanning the whole plane: every target is reachable.
  CHECK_FALSE(decide_ntnr({q("i"), q("-i"), q("1/3")}).holds);
  // Half-plane: mu_1 and mu_2 opposite, third above the line.
  CHECK_FALSE(decide_ntnr({q("1/2"), q("-1/2"), q("i")}).holds);
  CHECK(decide_ntnr({q("1/3+i"), q("-1-i")}).holds);
  CHECK(decide_ntnr({q("i"), q("-1-i")}).holds);
}

TEST_CASE("dimension two classification") {
  CHECK(classify_dim2(q("2")) == Class2::Linearizable);
  CHECK(classify_dim2(q("-1")) == Class2::ClassifiedByHolonomy);
  CHECK(classify_dim2(q("i")) == Class2::Linearizable);
  CHECK(classify_dim2(q("0")) == Class2::ClassifiedByHolonomy);
}

TEST_CASE("siegel domain membership") {
  CHECK(in_siegel_domain(q("i"), q("-1-i")));
  CHECK(in_siegel_domain(q("-1/3"), q("-1/2")));
  CHECK_FALSE(in_siegel_domain(q("2"), q("3")));
  CHECK_FALSE(in_siegel_domain(q("i"), q("1+i")));
  CHECK(in_siegel_domain(q("0"), q("5")));
  CHECK(in_siegel_domain(q("i"), q("-i")));       // origin on an edge
  CHECK(in_siegel_domain(q("-1"), q("i")));       // origin on the segment [1, -1]
  CHECK_FALSE(in_siegel_domain(q("i"), q("2*i")));
}

TEST_CASE("dimension three classification examples") {
  auto c = classify_dim3(q("i"), q("-1-i"));
  CHECK(c.tag == Case3::SiegelNonreal);
  CHECK_FALSE(c.witness);
  c = classify_dim3(q("1/2"), q("-3"));
  CHECK(c.tag == Case3::SiegelReal3b);
  REQUIRE(c.witness);
  CHECK(c.witness->kind == Witness3::Kind::Equation);
  CHECK(c.witness->p == 2);
  CHECK(c.witness->q == 4);
  CHECK(classify_dim3(q("-1/3"), q("-1/2")).tag == Case3::SiegelRealClassified);
  CHECK(classify_dim3(q("2"), q("3")).tag == Case3::Poincare);
}

TEST_CASE("case (a) and permutations") {
  auto c = classify_dim3(q("-1/2"), q("-3/2"));
  CHECK(c.tag == Case3::SiegelReal3a);  // 1 * (-1/2) = -3/2 + 1
  CHECK_FALSE(c.permuted);
  REQUIRE(c.witness);
  CHECK(c.witness->p == 1);
  CHECK(c.witness->q == 1);
  auto swapped = classify_dim3(q("-3/2"), q("-1/2"));
  CHECK(swapped.tag == Case3::SiegelReal3a);
  CHECK(swapped.permuted);
  auto b = classify_dim3(q("-3"), q("1/2"));
  CHECK(b.tag == Case3::SiegelReal3b);
  CHECK(b.permuted);
  // No p solves p*lambda = mu + q here, so the cone witness is reported.
  auto cone = classify_dim3(q("1/2"), q("-1/3"));
  CHECK(cone.tag == Case3::SiegelReal3b);
  REQUIRE(cone.witness);
  CHECK(cone.witness->kind == Witness3::Kind::Cone);
  CHECK(cone.witness->p1 == 2);
  CHECK(cone.witness->p2 == 0);
  CHECK(cone.witness->q == 1);
}

TEST_CASE("classification consistency with the ntnr decision") {
  Gen g(42);
  for (int t = 0; t < 300; ++t) {
    GaussianRational l = g.coin(0.6) ? GaussianRational(g.rational(6, 4)) : g.gq(true, 4, 3);
    GaussianRational m = g.coin(0.6) ? GaussianRational(g.rational(6, 4)) : g.gq(true, 4, 3);
    auto c = classify_dim3(l, m);
    const bool ntnr = decide_ntnr({l, m}).holds;
    if (c.tag == Case3::SiegelReal3a || c.tag == Case3::SiegelReal3b) CHECK_FALSE(ntnr);
    if (c.tag == Case3::SiegelNonreal) CHECK(ntnr);
    if (c.tag == Case3::SiegelRealClassified) CHECK(ntnr);
    CHECK(classify_dim3(m, l).tag == c.tag);
    CHECK((c.witness.has_value()) == (c.tag == Case3::SiegelReal3a || c.tag == Case3::SiegelReal3b));
  }
}
