#pragma once

// Random inputs and an independent shape oracle for normal-form tests.

#include "support.hpp"
#include "xnf/normalform.hpp"

namespace xnf::testing {

inline GaussianRational gq_text(const char* s) { return GaussianRational::parse(s); }
inline TransverseSeries mono(const Shape& s, const Exponent& k, GaussianRational c = 1, int e = 0) {
  return TransverseSeries::monomial(s, k, LaurentPoly::monomial(c, e));
}
inline VectorField with_b(const Shape& s, std::vector<TransverseSeries> b) { return {TransverseSeries::x(s), std::move(b)}; }

// Oracle for the normal-form shape: does any term survive that the elimination should have removed?
inline std::optional<VectorMonomialIndex> smallest_nonresonant(const VectorField& x, const EigenData& mu,
                                                        const std::vector<int>& eps) {
  std::optional<VectorMonomialIndex> best;
  const int n = x.n();
  for (int j = 0; j < n; ++j)
    for (const auto& [m, g] : x.b(j).terms()) {
      VectorMonomialIndex idx{m, j};
      idx.k[static_cast<std::size_t>(j)] -= 1;
      GaussianRational s = weighted_sum(mu, idx.k);
      for (const auto& [e, c] : g.terms()) {
        GaussianRational structural;
        if (e == 0 && m == unit_exponent(n, j)) structural = mu[static_cast<std::size_t>(j)];
        if (e == 0 && j > 0 && eps[static_cast<std::size_t>(j)] && m == unit_exponent(n, j - 1)) structural = 1;
        if (c == structural) continue;
        if ((s + GaussianRational(e)).is_zero()) continue;
        if (!best || grlex_compare(idx, *best) < 0) best = idx;
      }
    }
  return best;
}

inline std::vector<int> jordan_of(const VectorField& x, const EigenData& mu) {
  std::vector<int> eps(mu.size(), 0);
  for (int i = 1; i < x.n(); ++i)
    eps[static_cast<std::size_t>(i)] = mu[static_cast<std::size_t>(i)] == mu[static_cast<std::size_t>(i - 1)] &&
                                       x.b(i).coeff(unit_exponent(x.n(), i - 1)).coeff(0).is_one();
  return eps;
}

struct RandomInput {
  VectorField field;
  EigenData mu;
};

inline RandomInput random_input(Gen& g, const Shape& s, bool x_linear) {
  const std::vector<const char*> pool{"-1", "1/2", "-1/2", "2", "i", "-1/3", "3/2", "1"};
  const int n = s.n;
  EigenData mu;
  for (int i = 0; i < n; ++i) mu.push_back(gq_text(pool[static_cast<std::size_t>(g.uniform(0, static_cast<int>(pool.size()) - 1))]));
  if (n > 1 && g.coin(0.3)) mu[1] = mu[0];
  std::vector<TransverseSeries> b;
  for (int i = 0; i < n; ++i) {
    TransverseSeries bi = g.series(s, 2, 0, *s.x_cap, 4, true);
    bi += mono(s, unit_exponent(n, i), mu[static_cast<std::size_t>(i)]);
    for (int l = 0; l < i; ++l) {
      if (!(mu[static_cast<std::size_t>(l)] == mu[static_cast<std::size_t>(i)])) {
        bi += mono(s, unit_exponent(n, l), g.gq());
      } else if (l == i - 1 && g.coin()) {
        bi += mono(s, unit_exponent(n, l));
      }
    }
    if (x_linear)
      for (int l = 0; l < n; ++l)
        if (g.coin(0.4)) bi += mono(s, unit_exponent(n, l), g.nonzero_gq(), g.uniform(1, *s.x_cap));
    b.push_back(std::move(bi));
  }
  return {with_b(s, std::move(b)), mu};
}

}  // namespace xnf::testing
