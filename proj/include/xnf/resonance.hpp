#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xnf/series.hpp"

namespace xnf {

using EigenData = std::vector<GaussianRational>;

/// <mu, K>
GaussianRational weighted_sum(const EigenData& mu, const Exponent& k);

/// Elements of L_{n,m} (K >= -e_j for some j) with m <= |K| <= max_degree, gr.lex ascending.
std::vector<Exponent> lattice_indices(int n, int min_degree, int max_degree);

struct ResonantIndex {
  Exponent k;
  long s = 0;  // <mu, K>, a nonpositive integer
  long x_exp = 0;
};

/// sum_i p_i mu_i = mu_j + q with q >= 1; k = p - e_j lies in L_{n,0}. j is 0-based.
struct NegativeResonance {
  Exponent k;
  Exponent p;
  int j = 0;
  long q = 0;
};

struct ResonanceReport {
  std::vector<ResonantIndex> resonant;
  int degree_bound = 0;
  std::optional<NegativeResonance> negative;
};

ResonanceReport enumerate_resonances(const EigenData& mu, int d);

/// First K in L_{n,0} (by |K|, then gr.lex) with <mu,K> a positive integer,
/// searching degrees 0..max_degree.
std::optional<NegativeResonance> first_negative_resonance(const EigenData& mu, int max_degree);

struct NtnrDecision {
  bool holds = true;  // no transverse negative resonance
  bool exact = true;
  int search_bound = 0;  // degree bound used when the verdict is not exact
  std::optional<NegativeResonance> witness;
};

constexpr int kDefaultNtnrBound = 16;

/// Exact for n <= 3; bounded search up to `bound` for larger n.
NtnrDecision decide_ntnr(const EigenData& mu, int bound = kDefaultNtnrBound);

enum class Class2 { Linearizable, ClassifiedByHolonomy };
Class2 classify_dim2(const GaussianRational& lambda);
std::string to_string(Class2 c);

/// 0 in the closed convex hull of {1, lambda, mu}.
bool in_siegel_domain(const GaussianRational& lambda, const GaussianRational& mu);

enum class Case3 { Poincare, SiegelNonreal, SiegelRealClassified, SiegelReal3a, SiegelReal3b };
std::string to_string(Case3 c);

/// Either p*lambda = mu + q, or p1*lambda + p2*mu = q (the cone condition).
struct Witness3 {
  enum class Kind { Equation, Cone } kind = Kind::Equation;
  long p = 0, q = 0;
  long p1 = 0, p2 = 0;
};

struct Classification3 {
  Case3 tag = Case3::Poincare;
  bool permuted = false;  // witness refers to (mu, lambda) instead of (lambda, mu)
  std::optional<Witness3> witness;
};

Classification3 classify_dim3(const GaussianRational& lambda, const GaussianRational& mu);

}  // namespace xnf
