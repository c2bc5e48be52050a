#include "xnf/resonance.hpp"

#include <array>
#include <functional>

namespace xnf {

namespace {

long to_long(const mpz_class& v) {
  if (!v.fits_slong_p()) throw ArithmeticError("integer does not fit in a machine word");
  return v.get_si();
}

std::optional<long> integer_value(const GaussianRational& v) {
  if (!v.is_integer()) return std::nullopt;
  return to_long(v.re().get_num());
}

NegativeResonance make_witness(const EigenData& mu, const Exponent& k, long q) {
  NegativeResonance w{k, k, 0, q};
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] < 0) w.j = static_cast<int>(i);
  w.p[static_cast<std::size_t>(w.j)] += 1;
  (void)mu;
  return w;
}

// --- 2D monoid membership over the integers ---------------------------------

using Vec2 = std::array<mpz_class, 2>;

mpz_class cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }
mpz_class dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
bool is_zero(const Vec2& a) { return a[0] == 0 && a[1] == 0; }
Vec2 sub(const Vec2& a, const Vec2& b, const mpz_class& c) { return {a[0] - c * b[0], a[1] - c * b[1]}; }

// r = c * g with c a nonnegative integer.
bool nonneg_multiple(const Vec2& g, const Vec2& r) {
  if (cross(g, r) != 0 || dot(g, r) < 0) return false;
  for (int i = 0; i < 2; ++i)
    if (g[i] != 0 && r[i] % g[i] != 0) return false;
  return true;
}

// Membership in the subgroup of a line generated by collinear nonzero vectors.
bool line_group_contains(const std::vector<Vec2>& gens, const Vec2& r) {
  if (is_zero(r)) return true;
  const Vec2& e = gens.front();
  if (cross(e, r) != 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), e[0].get_mpz_t(), e[1].get_mpz_t());
  Vec2 u{e[0] / g, e[1] / g};
  auto coord = [&](const Vec2& v) -> std::optional<mpz_class> {
    int i = u[0] != 0 ? 0 : 1;
    if (v[i] % u[i] != 0) return std::nullopt;
    return mpz_class(v[i] / u[i]);
  };
  mpz_class step = 0;
  for (const auto& v : gens) {
    mpz_class c = *coord(v);
    mpz_gcd(step.get_mpz_t(), step.get_mpz_t(), c.get_mpz_t());
  }
  auto cr = coord(r);
  return cr && *cr % step == 0;
}

// Membership in the lattice generated by `gens`, via a two-row Hermite form.
bool lattice_contains(std::vector<Vec2> gens, const Vec2& t) {
  // Euclid on the first coordinate: afterwards gens[0] carries the gcd, the rest have x = 0.
  for (std::size_t i = 1; i < gens.size(); ++i) {
    while (gens[i][0] != 0) {
      mpz_class qt = gens[0][0] == 0 ? mpz_class(0) : mpz_class(gens[0][0] / gens[i][0]);
      gens[0] = sub(gens[0], gens[i], qt);
      std::swap(gens[0], gens[i]);
    }
  }
  mpz_class a = gens[0][0], b = gens[0][1], c = 0;
  for (std::size_t i = 1; i < gens.size(); ++i) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), gens[i][1].get_mpz_t());
  mpz_class k = 0;
  if (a == 0) {
    if (t[0] != 0) return false;
  } else {
    if (t[0] % a != 0) return false;
    k = t[0] / a;
  }
  mpz_class rest = t[1] - k * b;
  return c == 0 ? rest == 0 : rest % c == 0;
}

// Bounded search for t = sum c_i g_i, c_i >= 0, where w.g_i > 0 for every generator.
bool bounded_contains(const std::vector<Vec2>& gens, const Vec2& t, const Vec2& w) {
  if (gens.empty()) return is_zero(t);
  std::function<bool(std::size_t, const Vec2&)> rec = [&](std::size_t i, const Vec2& r) -> bool {
    if (dot(w, r) < 0) return false;
    if (i + 1 == gens.size()) return nonneg_multiple(gens[i], r);
    if (i + 2 == gens.size()) {
      const Vec2 &g1 = gens[i], &g2 = gens[i + 1];
      mpz_class det = cross(g1, g2);
      if (det != 0) {
        mpz_class a = cross(r, g2), b = cross(g1, r);
        if (a % det != 0 || b % det != 0) return false;
        return a / det >= 0 && b / det >= 0;
      }
    }
    Vec2 cur = r;
    while (dot(w, cur) >= 0) {
      if (rec(i + 1, cur)) return true;
      cur = sub(cur, gens[i], 1);
    }
    return false;
  };
  return rec(0, t);
}

Vec2 perp(const Vec2& g) { return {-g[1], g[0]}; }

// Is t in the monoid generated by gens?
bool monoid_contains(const std::vector<Vec2>& all, const Vec2& t) {
  std::vector<Vec2> gens;
  for (const auto& g : all)
    if (!is_zero(g)) gens.push_back(g);
  if (gens.empty()) return is_zero(t);

  bool collinear = true;
  for (const auto& g : gens)
    if (cross(gens.front(), g) != 0) collinear = false;
  if (collinear) {
    const Vec2& d = gens.front();
    if (cross(d, t) != 0) return false;
    bool both = false;
    for (const auto& g : gens)
      if (dot(g, d) < 0) both = true;
    return both ? line_group_contains(gens, t) : bounded_contains(gens, t, d);
  }

  // A supporting line of a proper cone in the plane passes through a generator.
  std::optional<Vec2> nu;
  for (const auto& g : gens) {
    for (const Vec2& cand : {perp(g), Vec2{g[1], -g[0]}}) {
      bool ok = true;
      for (const auto& h : gens)
        if (dot(cand, h) < 0) ok = false;
      if (ok) {
        nu = cand;
        break;
      }
    }
    if (nu) break;
  }
  if (!nu) return lattice_contains(gens, t);

  std::vector<Vec2> on_line, off_line;
  for (const auto& g : gens) (dot(*nu, g) == 0 ? on_line : off_line).push_back(g);
  bool both = false;
  for (const auto& g : on_line)
    if (dot(g, on_line.front()) < 0) both = true;

  if (both) {
    // Half-plane: enumerate the off-line part exactly along nu, then a line-group check.
    if (dot(*nu, t) < 0) return false;
    std::function<bool(std::size_t, const Vec2&)> rec = [&](std::size_t i, const Vec2& r) -> bool {
      if (i == off_line.size()) return dot(*nu, r) == 0 && line_group_contains(on_line, r);
      Vec2 cur = r;
      while (dot(*nu, cur) >= 0) {
        if (rec(i + 1, cur)) return true;
        cur = sub(cur, off_line[i], 1);
      }
      return false;
    };
    return rec(0, t);
  }

  // Pointed cone: tilt nu towards the extreme ray it touches.
  const Vec2& d = on_line.front();
  mpz_class n = 1;
  for (const auto& g : gens) n += abs(dot(d, g));
  Vec2 w{n * (*nu)[0] + d[0], n * (*nu)[1] + d[1]};
  return bounded_contains(gens, t, w);
}

mpz_class common_denominator(const EigenData& mu) {
  mpz_class den = 1;
  for (const auto& m : mu) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m.re().get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m.im().get_den_mpz_t());
  }
  return den;
}

Vec2 scaled(const GaussianRational& v, const mpz_class& den) {
  Rational re = v.re() * den, im = v.im() * den;
  return {re.get_num(), im.get_num()};
}

bool has_negative_resonance_exact(const EigenData& mu) {
  const mpz_class den = common_denominator(mu);
  std::vector<Vec2> gens;
  for (const auto& m : mu) gens.push_back(scaled(m, den));
  gens.push_back(scaled(GaussianRational(-1), den));
  // sum p_i mu_i = mu_k + q with p_m >= 1, q >= 1  <=>  mu_k + 1 - mu_m in the monoid.
  for (const auto& mk : mu)
    for (const auto& mm : mu)
      if (monoid_contains(gens, scaled(mk + GaussianRational(1) - mm, den))) return true;
  return false;
}

}  // namespace

GaussianRational weighted_sum(const EigenData& mu, const Exponent& k) {
  if (mu.size() != k.size()) throw UsageError("index arity does not match eigenvalue count");
  GaussianRational s;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] != 0) s += mu[i] * GaussianRational(k[i]);
  return s;
}

std::vector<Exponent> lattice_indices(int n, int min_degree, int max_degree) {
  std::vector<Exponent> out;
  for (int t = std::max(min_degree, 0); t <= max_degree; ++t) {
    std::vector<Exponent> level = exponents_of_degree(n, t);
    for (int k = 0; k < n; ++k)
      for (Exponent p : exponents_of_degree(n, t + 1)) {
        if (p[static_cast<std::size_t>(k)] != 0) continue;
        p[static_cast<std::size_t>(k)] = -1;
        level.push_back(std::move(p));
      }
    std::sort(level.begin(), level.end(), GrlexLess{});
    for (auto& e : level) out.push_back(std::move(e));
  }
  return out;
}

std::optional<NegativeResonance> first_negative_resonance(const EigenData& mu, int max_degree) {
  const int n = static_cast<int>(mu.size());
  for (int t = 0; t <= max_degree; ++t)
    for (const auto& k : lattice_indices(n, t, t)) {
      auto v = integer_value(weighted_sum(mu, k));
      if (v && *v >= 1) return make_witness(mu, k, *v);
    }
  return std::nullopt;
}

ResonanceReport enumerate_resonances(const EigenData& mu, int d) {
  if (d < 1) throw UsageError("degree bound must be at least 1");
  if (mu.empty()) throw UsageError("at least one eigenvalue is required");
  ResonanceReport out;
  out.degree_bound = d;
  for (const auto& k : lattice_indices(static_cast<int>(mu.size()), 1, d)) {
    auto v = integer_value(weighted_sum(mu, k));
    if (v && *v <= 0) out.resonant.push_back({k, *v, -*v});
  }
  out.negative = first_negative_resonance(mu, d);
  return out;
}

NtnrDecision decide_ntnr(const EigenData& mu, int bound) {
  if (mu.empty()) throw UsageError("at least one eigenvalue is required");
  NtnrDecision out;
  if (mu.size() > 3) {
    out.exact = false;
    out.search_bound = bound;
    out.witness = first_negative_resonance(mu, bound);
    out.holds = !out.witness;
    return out;
  }
  out.holds = !has_negative_resonance_exact(mu);
  if (!out.holds) {
    // A witness exists, so the degree-by-degree search terminates at the minimal one.
    for (int t = 0; !out.witness; ++t) out.witness = first_negative_resonance(mu, t);
  }
  return out;
}

Class2 classify_dim2(const GaussianRational& lambda) {
  return (sgn(lambda.im()) != 0 || sgn(lambda.re()) > 0) ? Class2::Linearizable : Class2::ClassifiedByHolonomy;
}

std::string to_string(Class2 c) { return c == Class2::Linearizable ? "Linearizable" : "ClassifiedByHolonomy"; }

std::string to_string(Case3 c) {
  switch (c) {
    case Case3::Poincare: return "Poincare";
    case Case3::SiegelNonreal: return "SiegelNonreal";
    case Case3::SiegelRealClassified: return "SiegelRealClassified";
    case Case3::SiegelReal3a: return "SiegelReal3a";
    case Case3::SiegelReal3b: return "SiegelReal3b";
  }
  return "?";
}

bool in_siegel_domain(const GaussianRational& lambda, const GaussianRational& mu) {
  const EigenData pts{GaussianRational(1), lambda, mu};
  const mpz_class den = common_denominator(pts);
  std::array<Vec2, 3> p{scaled(pts[0], den), scaled(pts[1], den), scaled(pts[2], den)};
  for (const auto& v : p)
    if (is_zero(v)) return true;
  std::array<mpz_class, 3> c{cross(p[0], p[1]), cross(p[1], p[2]), cross(p[2], p[0])};
  if (c[0] == 0 && c[1] == 0 && c[2] == 0) {
    // All points on one line through the origin: need two opposite ones.
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (dot(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]) < 0) return true;
    return false;
  }
  bool pos = false, neg = false;
  for (const auto& v : c) {
    if (v > 0) pos = true;
    if (v < 0) neg = true;
  }
  return !(pos && neg);
}

namespace {

// Smallest p >= 1 with p*lambda - mu a positive integer (lambda, mu real).
std::optional<Witness3> equation_witness(const Rational& lambda, const Rational& mu) {
  long limit;
  if (sgn(lambda) > 0) {
    limit = to_long(lambda.get_den());  // p*lambda mod 1 has period den(lambda)
  } else if (sgn(lambda) == 0) {
    limit = 1;
  } else {
    Rational bound = (-mu - 1) / -lambda;  // p*lambda - mu >= 1
    if (sgn(bound) < 0) return std::nullopt;
    limit = to_long(mpz_class(bound.get_num() / bound.get_den()));
  }
  for (long p = 1; p <= limit; ++p) {
    Rational v = lambda * p - mu;
    if (v.get_den() == 1 && v >= 1) return Witness3{Witness3::Kind::Equation, p, to_long(v.get_num()), 0, 0};
  }
  return std::nullopt;
}

// Smallest p1 + p2 with p1*lambda + p2*mu a positive integer; lambda > 0 guarantees one.
Witness3 cone_witness(const Rational& lambda, const Rational& mu) {
  for (long t = 1;; ++t)
    for (long p2 = 0; p2 <= t; ++p2) {
      long p1 = t - p2;
      Rational v = lambda * p1 + mu * p2;
      if (v.get_den() == 1 && v >= 1) return {Witness3::Kind::Cone, 0, to_long(v.get_num()), p1, p2};
    }
}

}  // namespace

Classification3 classify_dim3(const GaussianRational& lambda, const GaussianRational& mu) {
  Classification3 out;
  if (!in_siegel_domain(lambda, mu)) {
    out.tag = Case3::Poincare;
    return out;
  }
  if (!lambda.is_real() || !mu.is_real()) {
    out.tag = Case3::SiegelNonreal;
    return out;
  }
  Rational l = lambda.re(), m = mu.re();
  out.tag = Case3::SiegelRealClassified;
  // Case (b): one eigenvalue positive, the other nonpositive.
  if (sgn(l) > 0 || sgn(m) > 0) {
    out.permuted = sgn(l) <= 0;
    if (out.permuted) std::swap(l, m);
    out.tag = Case3::SiegelReal3b;
    out.witness = equation_witness(l, m);
    if (!out.witness) out.witness = cone_witness(l, m);
    return out;
  }
  // Case (a): mu < lambda <= 0 after a possible swap.
  if (l == m) return out;
  out.permuted = l < m;
  if (out.permuted) std::swap(l, m);
  if (auto w = equation_witness(l, m)) {
    out.tag = Case3::SiegelReal3a;
    out.witness = w;
  } else {
    out.permuted = false;
  }
  return out;
}

}  // namespace xnf
