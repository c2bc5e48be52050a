#include "xnf/normalform.hpp"

namespace xnf {

namespace {

struct Candidate {
  VectorMonomialIndex index;
  LaurentPoly f;
};

// Constant part of the coefficient of z^M d/dz_j that belongs to the linear normal form.
GaussianRational structural_constant(const EigenData& mu, const std::vector<int>& eps, int j, const Exponent& m) {
  const int n = static_cast<int>(mu.size());
  if (m == unit_exponent(n, j)) return mu[static_cast<std::size_t>(j)];
  if (j > 0 && eps[static_cast<std::size_t>(j)] == 1 && m == unit_exponent(n, j - 1)) return 1;
  return {};
}

VectorMonomialIndex index_of(int n, int j, const Exponent& m) {
  VectorMonomialIndex idx{m, j};
  idx.k[static_cast<std::size_t>(j)] -= 1;
  (void)n;
  return idx;
}

std::vector<int> validate_linear_part(const VectorField& x, const EigenData& mu) {
  const int n = x.n();
  std::vector<int> eps(static_cast<std::size_t>(n), 0);
  LaurentMatrix lin = x.linear_part();
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      GaussianRational c = lin[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)].coeff(0);
      const GaussianRational& mi = mu[static_cast<std::size_t>(i)];
      const GaussianRational& ml = mu[static_cast<std::size_t>(l)];
      if (l == i) {
        if (!(c == mi)) throw UsageError("diagonal of the z-linear part does not match the eigenvalues");
      } else if (l > i) {
        if (!c.is_zero()) throw UsageError("z-linear part must be lower triangular (b_i may only involve z_1..z_i)");
      } else if (mi == ml) {
        if (c.is_zero()) continue;
        if (l != i - 1 || !c.is_one())
          throw UsageError("couplings between equal eigenvalues must be Jordan blocks z_{i-1} d/dz_i");
        eps[static_cast<std::size_t>(i)] = 1;
      }
    }
  return eps;
}

// With `constant_linear`, only x-independent z-linear terms are considered.
std::optional<Candidate> smallest_nonresonant(const VectorField& x, const EigenData& mu, const std::vector<int>& eps,
                                              bool constant_linear = false) {
  std::optional<Candidate> best;
  for (int j = 0; j < x.n(); ++j)
    for (const auto& [m, g] : x.b(j).terms()) {
      if (constant_linear && total_degree(m) != 1) continue;
      VectorMonomialIndex idx = index_of(x.n(), j, m);
      if (best && grlex_compare(idx, best->index) >= 0) continue;
      LaurentPoly g_eff = (constant_linear ? LaurentPoly(g.coeff(0)) : g) - LaurentPoly(structural_constant(mu, eps, j, m));
      EulerSolution sol = lp_euler_solve(g_eff, weighted_sum(mu, idx.k));
      if (!sol.f.is_zero()) best = Candidate{idx, sol.f};
    }
  return best;
}

long binomial(int a, int b) {
  long r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace

NormalFormResult normalize(const VectorField& input, const EigenData& mu, int x_cap, const NormalizeObserver& on_step) {
  const int n = input.n();
  if (static_cast<int>(mu.size()) != n) throw UsageError("eigenvalue count does not match the number of z-variables");
  if (x_cap < 0) throw UsageError("x cap must be nonnegative");
  auto check_support = [&](const TransverseSeries& s) {
    for (const auto& [k, c] : s.terms()) {
      if (!c.is_taylor()) throw UsageError("normalize requires Taylor coefficients in x");
      if (c.max_exponent() > x_cap) throw UsageError("coefficient x-degree exceeds the x cap");
    }
  };
  check_support(input.a());
  for (const auto& b : input.b()) check_support(b);

  const Shape shape{n, input.shape().degree_cap, x_cap};
  VectorField x = input.reshaped(shape);
  if (!(x.a() == TransverseSeries::x(shape))) throw UsageError("normalize requires the x-component to be x");
  for (const auto& b : x.b())
    if (b.madic_order() == 0) throw UsageError("normalize requires z-components in the maximal ideal");
  const std::vector<int> eps = validate_linear_part(x, mu);

  NormalFormResult out{mu, x, Automorphism::identity(shape), {}, eps, 0};
  const long guard = 10L * n * binomial(shape.degree_cap + n, n) + 10;
  auto eliminate = [&](const Candidate& step) {
    if (++out.steps > guard) throw PreconditionError("normalization made no progress");
    VectorField y = VectorField::monomial(shape, step.index, step.f);
    out.normal_field = adjoint_exp(y, out.normal_field);
    std::vector<TransverseSeries> images;
    for (const auto& img : out.normalizer.img_z()) images.push_back(exp_apply(y, img));
    out.normalizer = Automorphism(out.normalizer.img_x(), std::move(images));
  };
  // Bring the constant linear part to Jordan form first; the observed loop then
  // advances strictly in gr.lex order.
  while (auto step = smallest_nonresonant(out.normal_field, mu, eps, true)) eliminate(*step);
  while (auto step = smallest_nonresonant(out.normal_field, mu, eps)) {
    eliminate(*step);
    if (on_step) on_step(step->index, out.normal_field);
  }

  for (int j = 0; j < n; ++j)
    for (const auto& [m, g] : out.normal_field.b(j).terms()) {
      LaurentPoly g_eff = g - LaurentPoly(structural_constant(mu, eps, j, m));
      for (const auto& [e, c] : g_eff.terms()) out.resonant_coeffs.push_back({index_of(n, j, m), e, c});
    }
  return out;
}

VectorField verify_conjugation(const Automorphism& phi, const VectorField& x, const VectorField& y) {
  const Shape& shape = phi.shape();
  return pushforward(phi, x.reshaped(shape)) - y.reshaped(shape);
}

VectorField CentralizerMonomial::field(const Shape& shape) const {
  if (euler) return VectorField::euler(shape);
  return VectorField::monomial(shape, index, LaurentPoly::monomial(1, l));
}

CentralizerResult centralizer_solve(const EigenData& mu, std::pair<int, int> x_window, int d) {
  if (mu.empty()) throw UsageError("at least one eigenvalue is required");
  if (d < 1) throw UsageError("degree bound must be at least 1");
  if (x_window.first > x_window.second) throw UsageError("empty x window");
  const int n = static_cast<int>(mu.size());
  CentralizerResult out;
  out.basis.push_back({{Exponent(static_cast<std::size_t>(n), 0), 0}, 1, true, true});
  for (const auto& k : lattice_indices(n, 0, d - 1)) {
    GaussianRational s = weighted_sum(mu, k);
    if (!s.is_integer()) continue;
    mpz_class l_big = -s.re().get_num();
    if (l_big < x_window.first || l_big > x_window.second) continue;
    const int l = static_cast<int>(l_big.get_si());
    const int degree = total_degree(k);
    for (int j = 0; j < n; ++j) {
      VectorMonomialIndex idx{k, j};
      if (!idx.valid()) continue;
      out.basis.push_back({idx, l, false, degree >= 1 || l == 0});
      if (l < 0) out.negative_l = true;
    }
  }
  return out;
}

CentralizerResult centralizer_solve(const NormalFormResult& nf, std::pair<int, int> x_window, int d) {
  return centralizer_solve(nf.mu, x_window, d);
}

Theorem1Check check_theorem1(const EigenData& mu, std::pair<int, int> x_window, int d) {
  Theorem1Check out;
  out.ntnr = decide_ntnr(mu).holds;
  CentralizerResult c = centralizer_solve(mu, x_window, d);
  for (const auto& m : c.basis)
    if (!m.euler && m.l < 0) {
      out.offending = m;
      break;
    }
  out.holds = !out.ntnr || !out.offending;
  return out;
}

}  // namespace xnf
