#include "xnf/holonomy.hpp"

#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

namespace xnf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct FieldTerm {
  Exponent m;
  int x_exp = 0;
  Complex c;
};

// z-components of an x-normalized field as complex-float polynomials.
struct NumericField {
  int n = 1;
  std::vector<std::vector<FieldTerm>> comps;
};

NumericField to_numeric(const VectorField& x) {
  if (!(x.a() == TransverseSeries::x(x.shape())))
    throw PreconditionError("path lifting requires the x-component to be x");
  NumericField out{x.n(), {}};
  for (const auto& b : x.b()) {
    if (b.madic_order() == 0) throw PreconditionError("path lifting requires z-components vanishing at z = 0");
    std::vector<FieldTerm> terms;
    for (const auto& [m, c] : b.terms())
      for (const auto& [e, v] : c.terms()) terms.push_back({m, e, v.to_complex()});
    out.comps.push_back(std::move(terms));
  }
  return out;
}

// Dense monomial basis of degree 0..d with a truncated multiplication table.
class JetSpace {
 public:
  JetSpace(int n, int d) : n_(n), d_(d) {
    for (int t = 0; t <= d; ++t)
      for (auto& e : exponents_of_degree(n, t)) {
        index_.emplace(e, monomials_.size());
        monomials_.push_back(std::move(e));
      }
    for (std::size_t a = 0; a < monomials_.size(); ++a)
      for (std::size_t b = 0; b < monomials_.size(); ++b) {
        if (total_degree(monomials_[a]) + total_degree(monomials_[b]) > d) continue;
        Exponent s = monomials_[a];
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += monomials_[b][i];
        table_.push_back({a, b, index_.at(s)});
      }
  }

  int n() const { return n_; }
  int degree() const { return d_; }
  std::size_t size() const { return monomials_.size(); }
  const Exponent& monomial(std::size_t i) const { return monomials_[i]; }
  std::optional<std::size_t> find(const Exponent& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Complex> multiply(const std::vector<Complex>& a, const std::vector<Complex>& b) const {
    std::vector<Complex> out(size());
    for (const auto& [i, j, k] : table_)
      if (a[i] != Complex(0) && b[j] != Complex(0)) out[k] += a[i] * b[j];
    return out;
  }

  std::vector<Complex> unit() const {
    std::vector<Complex> one(size());
    one[0] = 1.0;
    return one;
  }

 private:
  struct Product {
    std::size_t a, b, c;
  };
  int n_, d_;
  std::vector<Exponent> monomials_;
  std::map<Exponent, std::size_t, GrlexLess> index_;
  std::vector<Product> table_;
};

// Powers prod_i v_i^{m_i} of a vector of ring elements, memoized per evaluation.
template <typename T, typename Mul>
class Powers {
 public:
  Powers(const std::vector<T>& base, T one, Mul mul) : base_(base), one_(std::move(one)), mul_(mul) {}

  const T& get(const Exponent& m) {
    if (auto it = cache_.find(m); it != cache_.end()) return it->second;
    if (total_degree(m) == 0) return cache_.emplace(m, one_).first->second;
    std::size_t i = 0;
    while (m[i] == 0) ++i;
    Exponent lower = m;
    lower[i] -= 1;
    T v = mul_(get(lower), base_[i]);
    return cache_.emplace(m, std::move(v)).first->second;
  }

 private:
  const std::vector<T>& base_;
  T one_;
  Mul mul_;
  std::map<Exponent, T, GrlexLess> cache_;
};

using State = std::vector<Complex>;

template <typename System>
void integrate_unit_interval(System sys, State& state, double tol) {
  namespace ode = boost::numeric::odeint;
  using Stepper = ode::runge_kutta_fehlberg78<State>;
  try {
    ode::integrate_adaptive(ode::make_controlled<Stepper>(tol, tol), sys, state, 0.0, 1.0, 1e-3);
  } catch (const EscapeError&) {
    throw;
  } catch (const std::exception& e) {
    throw IntegrationError(std::string("integration failed: ") + e.what());
  }
  for (const auto& v : state)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw IntegrationError("integration produced non-finite values");
}

Complex point_on(const PathSegment& seg, double t) { return std::exp(seg.log_start + t * (seg.log_end - seg.log_start)); }

// One segment of jet transport; `state` holds n dense jets back to back.
void transport_segment(const NumericField& f, const JetSpace& space, const PathSegment& seg, State& state, double tol) {
  const std::size_t s = space.size();
  const Complex dlog = seg.log_end - seg.log_start;
  auto sys = [&](const State& y, State& dy, double t) {
    std::vector<std::vector<Complex>> jets(static_cast<std::size_t>(f.n));
    for (int i = 0; i < f.n; ++i)
      jets[static_cast<std::size_t>(i)].assign(y.begin() + static_cast<long>(i * s), y.begin() + static_cast<long>((i + 1) * s));
    auto mul = [&](const std::vector<Complex>& a, const std::vector<Complex>& b) { return space.multiply(a, b); };
    Powers<std::vector<Complex>, decltype(mul)> powers(jets, space.unit(), mul);
    const Complex x = point_on(seg, t);
    std::fill(dy.begin(), dy.end(), Complex(0));
    for (int i = 0; i < f.n; ++i)
      for (const auto& term : f.comps[static_cast<std::size_t>(i)]) {
        if (total_degree(term.m) > space.degree()) continue;
        const Complex factor = dlog * term.c * std::pow(x, term.x_exp);
        const auto& p = powers.get(term.m);
        for (std::size_t k = 0; k < s; ++k) dy[static_cast<std::size_t>(i) * s + k] += factor * p[k];
      }
  };
  integrate_unit_interval(sys, state, tol);
}

void lift_segment(const NumericField& f, const PathSegment& seg, State& z, const NumericOptions& opt) {
  const Complex dlog = seg.log_end - seg.log_start;
  auto sys = [&](const State& y, State& dy, double t) {
    for (const auto& v : y)
      if (!(std::abs(v) <= opt.escape_radius)) throw EscapeError("leaf left the domain |z| <= " + std::to_string(opt.escape_radius));
    auto mul = [](const Complex& a, const Complex& b) { return a * b; };
    Powers<Complex, decltype(mul)> powers(y, Complex(1), mul);
    const Complex x = point_on(seg, t);
    std::fill(dy.begin(), dy.end(), Complex(0));
    for (int i = 0; i < f.n; ++i)
      for (const auto& term : f.comps[static_cast<std::size_t>(i)])
        dy[static_cast<std::size_t>(i)] += dlog * term.c * std::pow(x, term.x_exp) * powers.get(term.m);
  };
  integrate_unit_interval(sys, z, opt.tol);
}

HolonomyJet to_jet(const JetSpace& space, const State& state) {
  HolonomyJet out{space.n(), space.degree(), {}};
  const std::size_t s = space.size();
  for (int i = 0; i < space.n(); ++i) {
    std::map<Exponent, Complex, GrlexLess> comp;
    for (std::size_t k = 1; k < s; ++k) {
      Complex c = state[static_cast<std::size_t>(i) * s + k];
      if (c != Complex(0)) comp.emplace(space.monomial(k), c);
    }
    out.coeffs.push_back(std::move(comp));
  }
  return out;
}

std::vector<std::vector<Complex>> to_dense(const JetSpace& space, const HolonomyJet& jet) {
  std::vector<std::vector<Complex>> out;
  for (const auto& comp : jet.coeffs) {
    std::vector<Complex> v(space.size());
    for (const auto& [k, c] : comp)
      if (auto idx = space.find(k)) v[*idx] = c;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

HolonomyJet HolonomyJet::identity(int n, int degree) {
  HolonomyJet out{n, degree, {}};
  for (int i = 0; i < n; ++i) out.coeffs.push_back({{unit_exponent(n, i), Complex(1)}});
  return out;
}

HolonomyJet HolonomyJet::from_automorphism(const Automorphism& phi, Complex x0) {
  HolonomyJet out{phi.n(), phi.shape().degree_cap, {}};
  for (const auto& img : phi.img_z()) {
    std::map<Exponent, Complex, GrlexLess> comp;
    for (const auto& [k, c] : img.terms()) {
      if (total_degree(k) == 0) continue;
      Complex v = c.evaluate(x0);
      if (v != Complex(0)) comp.emplace(k, v);
    }
    out.coeffs.push_back(std::move(comp));
  }
  return out;
}

Complex HolonomyJet::coeff(int i, const Exponent& k) const {
  const auto& comp = coeffs.at(static_cast<std::size_t>(i));
  auto it = comp.find(k);
  return it == comp.end() ? Complex(0) : it->second;
}

Point HolonomyJet::evaluate(const Point& z) const {
  if (static_cast<int>(z.size()) != n) throw UsageError("jet evaluation point has wrong arity");
  Point out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (const auto& [k, c] : coeffs[static_cast<std::size_t>(i)]) {
      Complex v = c;
      for (std::size_t l = 0; l < k.size(); ++l) v *= std::pow(z[l], k[l]);
      out[static_cast<std::size_t>(i)] += v;
    }
  return out;
}

double HolonomyJet::max_abs() const {
  double m = 0;
  for (const auto& comp : coeffs)
    for (const auto& [k, c] : comp) m = std::max(m, std::abs(c));
  return m;
}

HolonomyJet compose(const HolonomyJet& outer, const HolonomyJet& inner) {
  if (outer.n != inner.n) throw UsageError("jet composition with different dimensions");
  JetSpace space(outer.n, std::min(outer.degree, inner.degree));
  auto base = to_dense(space, inner);
  auto mul = [&](const std::vector<Complex>& a, const std::vector<Complex>& b) { return space.multiply(a, b); };
  Powers<std::vector<Complex>, decltype(mul)> powers(base, space.unit(), mul);
  State state(static_cast<std::size_t>(outer.n) * space.size());
  for (int i = 0; i < outer.n; ++i)
    for (const auto& [k, c] : outer.coeffs[static_cast<std::size_t>(i)]) {
      if (total_degree(k) > space.degree()) continue;
      const auto& p = powers.get(k);
      for (std::size_t l = 0; l < space.size(); ++l) state[static_cast<std::size_t>(i) * space.size() + l] += c * p[l];
    }
  return to_jet(space, state);
}

HolonomyJet operator-(const HolonomyJet& a, const HolonomyJet& b) {
  if (a.n != b.n) throw UsageError("jet difference with different dimensions");
  HolonomyJet out{a.n, std::min(a.degree, b.degree), {}};
  for (int i = 0; i < a.n; ++i) {
    std::map<Exponent, Complex, GrlexLess> comp;
    for (const auto& [k, c] : a.coeffs[static_cast<std::size_t>(i)])
      if (total_degree(k) <= out.degree) comp[k] += c;
    for (const auto& [k, c] : b.coeffs[static_cast<std::size_t>(i)])
      if (total_degree(k) <= out.degree) comp[k] -= c;
    out.coeffs.push_back(std::move(comp));
  }
  return out;
}

PathSegment PathSegment::radial(double r0, double r1, double turns) {
  if (!(r0 > 0) || !(r1 > 0)) throw UsageError("radial path must stay away from x = 0");
  const Complex angle(0, kTwoPi * turns);
  return {std::log(r0) + angle, std::log(r1) + angle};
}

PathSegment PathSegment::arc(double radius, double turns0, double turns1) {
  if (!(radius > 0)) throw UsageError("arc radius must be positive");
  return {Complex(std::log(radius), kTwoPi * turns0), Complex(std::log(radius), kTwoPi * turns1)};
}

HolonomyJet transport_jet(const VectorField& x, int d, const PathSpec& path, const NumericOptions& opt) {
  if (d < 1) throw UsageError("jet degree must be at least 1");
  const NumericField f = to_numeric(x);
  JetSpace space(x.n(), d);
  State state(static_cast<std::size_t>(x.n()) * space.size());
  for (int i = 0; i < x.n(); ++i) state[static_cast<std::size_t>(i) * space.size() + *space.find(unit_exponent(x.n(), i))] = 1.0;
  for (const auto& seg : path) transport_segment(f, space, seg, state, opt.tol);
  return to_jet(space, state);
}

HolonomyJet holonomy_jet(const VectorField& x, int d, const NumericOptions& opt, int windings) {
  return transport_jet(x, d, {PathSegment::arc(1.0, 0.0, windings)}, opt);
}

Point path_lift(const VectorField& x, const Point& z0, const PathSpec& path, const NumericOptions& opt) {
  if (static_cast<int>(z0.size()) != x.n()) throw UsageError("start point has wrong arity");
  const NumericField f = to_numeric(x);
  State z = z0;
  for (const auto& seg : path) lift_segment(f, seg, z, opt);
  return z;
}

double conjugacy_residual(const VectorField& x, const Automorphism& psi, int d, const NumericOptions& opt) {
  if (!psi.is_x_normalized()) throw PreconditionError("conjugacy check requires an x-normalized automorphism");
  const VectorField y = pushforward(psi, x.reshaped(psi.shape()));
  const HolonomyJet hx = holonomy_jet(x, d, opt);
  const HolonomyJet hy = holonomy_jet(y, d, opt);
  const HolonomyJet p = HolonomyJet::from_automorphism(psi);
  return (compose(hx, p) - compose(p, hy)).max_abs();
}

Point transport_conjugacy(const VectorField& x, const VectorField& y, const HolonomyJet& phi, Complex x0,
                          const Point& z0, const NumericOptions& opt, int windings) {
  if (std::abs(x0) == 0) throw UsageError("base point must avoid x = 0");
  const double r = std::abs(x0);
  const double turns = std::arg(x0) / kTwoPi;
  const PathSpec forward{PathSegment::radial(r, 1.0, turns), PathSegment::arc(1.0, turns, windings)};
  const PathSpec back{PathSegment::arc(1.0, windings, turns), PathSegment::radial(1.0, r, turns)};
  Point at_one = path_lift(x, z0, forward, opt);
  return path_lift(y, phi.evaluate(at_one), back, opt);
}

Point apply_point(const Automorphism& phi, Complex x, const Point& z) {
  Point out;
  for (const auto& img : phi.img_z()) out.push_back(img.evaluate(x, z));
  return out;
}

}  // namespace xnf
