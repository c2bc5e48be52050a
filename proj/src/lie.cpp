#include "xnf/lie.hpp"

#include <functional>
#include <map>

namespace xnf {

namespace {

constexpr int kSeriesGuard = 100000;

TransverseSeries one(const Shape& shape) { return TransverseSeries::constant(shape, LaurentPoly(1)); }

bool has_degree_zero(const TransverseSeries& s) {
  auto order = s.madic_order();
  return order && *order == 0;
}

bool is_constant_poly(const LaurentPoly& p) {
  return p.is_zero() || (p.size() == 1 && p.terms().front().first == 0);
}

LaurentMatrix degree_one_part(const std::vector<TransverseSeries>& comps, int n) {
  LaurentMatrix m(static_cast<std::size_t>(n), std::vector<LaurentPoly>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          comps[static_cast<std::size_t>(i)].coeff(unit_exponent(n, j));
  return m;
}

bool all_constant(const LaurentMatrix& m) {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!is_constant_poly(e)) return false;
  return true;
}

ExactMatrix constant_terms(const LaurentMatrix& m) {
  ExactMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& e : m[i]) out[i].push_back(e.coeff(0));
  return out;
}

template <typename T>
std::vector<std::vector<T>> matmul(const std::vector<std::vector<T>>& a, const std::vector<std::vector<T>>& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  std::vector<std::vector<T>> out(n, std::vector<T>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

template <typename T>
bool is_zero_matrix(const std::vector<std::vector<T>>& m) {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

// M^N == 0 for some N <= size, decided by repeated squaring.
template <typename T>
bool matrix_is_nilpotent(std::vector<std::vector<T>> m) {
  std::size_t power = 1;
  while (power < m.size() && !is_zero_matrix(m)) {
    m = matmul(m, m);
    power *= 2;
  }
  return is_zero_matrix(m);
}

LaurentPoly truncate_x(const LaurentPoly& p, const Shape& shape) {
  return shape.x_cap ? p.truncated_above(*shape.x_cap) : p;
}

LaurentMatrix truncate_x(LaurentMatrix m, const Shape& shape) {
  for (auto& row : m)
    for (auto& e : row) e = truncate_x(e, shape);
  return m;
}

LaurentPoly laurent_det(const LaurentMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  LaurentPoly det;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    LaurentMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<LaurentPoly> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    LaurentPoly term = m[0][c] * laurent_det(minor);
    if (c % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

// Inverse of the z-linear part over the coefficient ring of `shape`.
LaurentMatrix invert_linear_part(const LaurentMatrix& a, const Shape& shape) {
  const std::size_t n = a.size();
  if (all_constant(a)) {
    ExactMatrix inv = invert_matrix(constant_terms(a));
    LaurentMatrix out(n, std::vector<LaurentPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i][j] = LaurentPoly(inv[i][j]);
    return out;
  }
  if (shape.x_cap) {
    // A = A0 + A+, A+ divisible by x: A^{-1} = sum_k (-A0^{-1} A+)^k A0^{-1}, finite mod x^{cap+1}.
    ExactMatrix a0 = constant_terms(a);
    ExactMatrix a0_inv = invert_matrix(a0);
    LaurentMatrix a0_inv_l(n, std::vector<LaurentPoly>(n));
    LaurentMatrix step(n, std::vector<LaurentPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a0_inv_l[i][j] = LaurentPoly(a0_inv[i][j]);
    LaurentMatrix a_plus = a;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a_plus[i][j] -= LaurentPoly(a0[i][j]);
    step = matmul(a0_inv_l, a_plus);
    for (auto& row : step)
      for (auto& e : row) e *= GaussianRational(-1);
    LaurentMatrix term = a0_inv_l, sum = a0_inv_l;
    for (int k = 0; k <= *shape.x_cap + 1; ++k) {
      term = truncate_x(matmul(step, term), shape);
      if (is_zero_matrix(term)) break;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sum[i][j] += term[i][j];
    }
    return sum;
  }
  // Laurent ring: invertible iff the determinant is a unit, i.e. a monomial.
  LaurentPoly det = laurent_det(a);
  if (det.size() != 1) throw UsageError("z-linear part is not invertible over Laurent polynomials");
  const auto& [e, c] = det.terms().front();
  LaurentPoly det_inv = LaurentPoly::monomial(c.inverse(), -e);
  LaurentMatrix out(n, std::vector<LaurentPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LaurentMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<LaurentPoly> row;
        for (std::size_t cc = 0; cc < n; ++cc)
          if (cc != i) row.push_back(a[r][cc]);
        minor.push_back(std::move(row));
      }
      LaurentPoly cof = n == 1 ? LaurentPoly(1) : laurent_det(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      out[i][j] = cof * det_inv;
    }
  return out;
}

// Memoized powers of substituted z-images: z^K |-> prod img_i^{k_i}.
class PowerCache {
 public:
  explicit PowerCache(const std::vector<TransverseSeries>& images) : images_(images) {}

  const TransverseSeries& power(const Exponent& k) {
    if (auto it = cache_.find(k); it != cache_.end()) return it->second;
    const Shape& shape = images_.front().shape();
    if (total_degree(k) == 0) return cache_.emplace(k, one(shape)).first->second;
    std::size_t i = 0;
    while (k[i] == 0) ++i;
    Exponent lower = k;
    lower[i] -= 1;
    TransverseSeries p = power(lower) * images_[i];
    return cache_.emplace(k, std::move(p)).first->second;
  }

 private:
  const std::vector<TransverseSeries>& images_;
  std::map<Exponent, TransverseSeries, GrlexLess> cache_;
};

TransverseSeries substitute_z(const TransverseSeries& f, PowerCache& cache) {
  TransverseSeries out(f.shape());
  for (const auto& [k, c] : f.terms()) out += cache.power(k).times(c);
  return out;
}

Rational factorial(int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

}  // namespace

ExactMatrix invert_matrix(const ExactMatrix& m) {
  const std::size_t n = m.size();
  ExactMatrix a = m, inv(n, std::vector<GaussianRational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw UsageError("matrix is not square");
    inv[i][i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw UsageError("singular linear part");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    GaussianRational p = a[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= p;
      inv[col][j] *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      GaussianRational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// --- VectorField -----------------------------------------------------------

VectorField::VectorField(const Shape& shape) : a_(shape) {
  b_.assign(static_cast<std::size_t>(shape.n), TransverseSeries(shape));
}

VectorField::VectorField(TransverseSeries a, std::vector<TransverseSeries> b) : a_(std::move(a)), b_(std::move(b)) {
  if (static_cast<int>(b_.size()) != a_.n()) throw UsageError("vector field needs one z-component per variable");
  for (const auto& c : b_) require_same_shape(a_.shape(), c.shape(), "vector field");
}

VectorField VectorField::monomial(const Shape& shape, const VectorMonomialIndex& idx, const LaurentPoly& f) {
  if (!idx.valid()) throw UsageError("invalid monomial index: K + e_j must be nonnegative");
  VectorField v(shape);
  v.b_[static_cast<std::size_t>(idx.j)].add_term(idx.monomial(), f);
  return v;
}

VectorField VectorField::euler(const Shape& shape) {
  VectorField v(shape);
  v.a_ = TransverseSeries::x(shape);
  return v;
}

VectorField VectorField::diagonal(const Shape& shape, const std::vector<GaussianRational>& mu) {
  if (static_cast<int>(mu.size()) != shape.n) throw UsageError("eigenvalue count does not match n");
  VectorField v(shape);
  for (int i = 0; i < shape.n; ++i) v.b_[static_cast<std::size_t>(i)] = TransverseSeries::z(shape, i) * mu[static_cast<std::size_t>(i)];
  return v;
}

VectorField VectorField::linear(const Shape& shape, const ExactMatrix& m) {
  VectorField v(shape);
  for (int i = 0; i < shape.n; ++i)
    for (int j = 0; j < shape.n; ++j)
      v.b_[static_cast<std::size_t>(i)].add_term(unit_exponent(shape.n, j),
                                                 LaurentPoly(m.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j))));
  return v;
}

bool VectorField::is_zero() const {
  if (!a_.is_zero()) return false;
  for (const auto& c : b_)
    if (!c.is_zero()) return false;
  return true;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  require_same_shape(shape(), o.shape(), "vector field addition");
  a_ += o.a_;
  for (std::size_t i = 0; i < b_.size(); ++i) b_[i] += o.b_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  require_same_shape(shape(), o.shape(), "vector field subtraction");
  a_ -= o.a_;
  for (std::size_t i = 0; i < b_.size(); ++i) b_[i] -= o.b_[i];
  return *this;
}

VectorField& VectorField::operator*=(const GaussianRational& c) {
  a_ *= c;
  for (auto& comp : b_) comp *= c;
  return *this;
}

VectorField VectorField::times(const TransverseSeries& f) const {
  VectorField out = *this;
  out.a_ = f * a_;
  for (std::size_t i = 0; i < b_.size(); ++i) out.b_[i] = f * b_[i];
  return out;
}

LaurentMatrix VectorField::linear_part() const { return degree_one_part(b_, n()); }

bool VectorField::is_x_normalized() const {
  if (!(a_ == TransverseSeries::x(shape()))) return false;
  for (const auto& c : b_)
    if (has_degree_zero(c)) return false;
  return all_constant(linear_part());
}

VectorField VectorField::reshaped(const Shape& target) const {
  std::vector<TransverseSeries> b;
  for (const auto& c : b_) b.push_back(c.reshaped(target));
  return {a_.reshaped(target), std::move(b)};
}

std::string VectorField::str() const {
  std::string out;
  auto emit = [&](const TransverseSeries& s, const std::string& dvar) {
    for (const auto& [k, v] : s.terms())
      for (const auto& [e, c] : v.terms()) {
        std::string m = format_monomial(e, k);
        append_signed_term(out, c, m.empty() ? dvar : m + "*" + dvar);
      }
  };
  emit(a_, "dx");
  for (std::size_t i = 0; i < b_.size(); ++i) emit(b_[i], "dz" + std::to_string(i + 1));
  return out.empty() ? "0" : out;
}

// --- Automorphism ----------------------------------------------------------

Automorphism::Automorphism(TransverseSeries img_x, std::vector<TransverseSeries> img_z)
    : img_x_(std::move(img_x)), img_z_(std::move(img_z)) {
  if (static_cast<int>(img_z_.size()) != img_x_.n()) throw UsageError("automorphism needs one image per z-variable");
  for (const auto& c : img_z_) {
    require_same_shape(img_x_.shape(), c.shape(), "automorphism");
    if (has_degree_zero(c)) throw UsageError("z-images must lie in the maximal ideal");
  }
  if (has_degree_zero(img_x_ - TransverseSeries::x(shape())))
    throw UsageError("x-image must equal x modulo the maximal ideal");
}

Automorphism Automorphism::identity(const Shape& shape) {
  std::vector<TransverseSeries> z;
  for (int i = 0; i < shape.n; ++i) z.push_back(TransverseSeries::z(shape, i));
  return {TransverseSeries::x(shape), std::move(z)};
}

Automorphism Automorphism::linear(const Shape& shape, const ExactMatrix& m) {
  VectorField v = VectorField::linear(shape, m);
  return {TransverseSeries::x(shape), v.b()};
}

bool Automorphism::fixes_x() const { return img_x_ == TransverseSeries::x(shape()); }

bool Automorphism::is_identity() const { return *this == identity(shape()); }

LaurentMatrix Automorphism::linear_part() const { return degree_one_part(img_z_, n()); }

bool Automorphism::is_x_normalized() const {
  if (!fixes_x()) return false;
  LaurentMatrix lin = linear_part();
  if (!all_constant(lin)) return false;
  try {
    invert_matrix(constant_terms(lin));
  } catch (const UsageError&) {
    return false;
  }
  return true;
}

bool Automorphism::is_tangent_to_identity(int k) const {
  auto close = [&](const TransverseSeries& d) {
    auto order = d.madic_order();
    return !order || *order >= k + 1;
  };
  if (!close(img_x_ - TransverseSeries::x(shape()))) return false;
  for (int i = 0; i < n(); ++i)
    if (!close(img_z_[static_cast<std::size_t>(i)] - TransverseSeries::z(shape(), i))) return false;
  return true;
}

TransverseSeries Automorphism::apply(const TransverseSeries& f) const {
  require_same_shape(shape(), f.shape(), "automorphism application");
  PowerCache cache(img_z_);
  if (fixes_x()) return substitute_z(f, cache);
  // f(x + h, w) = sum_m (d/dx)^m f (x, w) h^m / m!, finite since h lies in m.
  TransverseSeries h = img_x_ - TransverseSeries::x(shape());
  TransverseSeries out(shape()), derivative = f, h_power = one(shape());
  for (int m = 0; m <= shape().degree_cap && !derivative.is_zero() && !h_power.is_zero(); ++m) {
    out += (substitute_z(derivative, cache) * h_power) * GaussianRational(Rational(1) / factorial(m));
    derivative = derivative.d_dx();
    h_power = h_power * h;
  }
  return out;
}

std::string Automorphism::str() const {
  std::string out = "x -> " + img_x_.str();
  for (std::size_t i = 0; i < img_z_.size(); ++i) out += "; z" + std::to_string(i + 1) + " -> " + img_z_[i].str();
  return out;
}

Automorphism compose(const Automorphism& outer, const Automorphism& inner) {
  require_same_shape(outer.shape(), inner.shape(), "automorphism composition");
  std::vector<TransverseSeries> z;
  for (const auto& c : inner.img_z()) z.push_back(outer.apply(c));
  return {outer.apply(inner.img_x()), std::move(z)};
}

// --- derivation operations -------------------------------------------------

TransverseSeries apply(const VectorField& x, const TransverseSeries& f) {
  require_same_shape(x.shape(), f.shape(), "derivation application");
  TransverseSeries out(f.shape());
  if (!x.a().is_zero()) out += x.a() * f.d_dx();
  for (int i = 0; i < x.n(); ++i) {
    const auto& bi = x.b(i);
    if (bi.is_zero()) continue;
    TransverseSeries d = f.d_dz(i);
    if (!d.is_zero()) out += bi * d;
  }
  return out;
}

VectorField bracket(const VectorField& x, const VectorField& y) {
  require_same_shape(x.shape(), y.shape(), "Lie bracket");
  TransverseSeries a = apply(x, y.a()) - apply(y, x.a());
  std::vector<TransverseSeries> b;
  for (int i = 0; i < x.n(); ++i) b.push_back(apply(x, y.b(i)) - apply(y, x.b(i)));
  return {std::move(a), std::move(b)};
}

bool is_k_flat(const VectorField& x, int k) {
  if (k < 1) throw UsageError("flatness order must be at least 1");
  auto at_least = [](const TransverseSeries& s, int order) {
    auto o = s.madic_order();
    return !o || *o >= order;
  };
  if (!at_least(x.a(), k)) return false;
  for (const auto& c : x.b())
    if (!at_least(c, k + 1)) return false;
  return true;
}

bool is_nilpotent(const VectorField& x) {
  // X(m) in m, and X(x) in m so that the degree-0 piece is mapped into m.
  if (has_degree_zero(x.a())) return false;
  for (const auto& c : x.b())
    if (has_degree_zero(c)) return false;
  const int n = x.n();
  LaurentMatrix lin = x.linear_part();
  if (is_zero_matrix(lin)) return true;
  // Graded piece j: z^K |-> sum_i k_i z^{K - e_i} * sum_l A[i][l] z_l.
  for (int j = 1; j <= x.shape().degree_cap; ++j) {
    std::vector<Exponent> basis = exponents_of_degree(n, j);
    std::map<Exponent, std::size_t, GrlexLess> index;
    for (std::size_t r = 0; r < basis.size(); ++r) index.emplace(basis[r], r);
    LaurentMatrix m(basis.size(), std::vector<LaurentPoly>(basis.size()));
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const Exponent& k = basis[col];
      for (int i = 0; i < n; ++i) {
        if (k[static_cast<std::size_t>(i)] == 0) continue;
        for (int l = 0; l < n; ++l) {
          const LaurentPoly& e = lin[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
          if (e.is_zero()) continue;
          Exponent target = k;
          target[static_cast<std::size_t>(i)] -= 1;
          target[static_cast<std::size_t>(l)] += 1;
          m[index.at(target)][col] += e * GaussianRational(k[static_cast<std::size_t>(i)]);
        }
      }
    }
    // Over Q[i][x]/(x^{cap+1}) a matrix is nilpotent iff its reduction mod x is.
    bool nilpotent = x.shape().x_cap ? matrix_is_nilpotent(constant_terms(m)) : matrix_is_nilpotent(m);
    if (!nilpotent) return false;
  }
  return true;
}

TransverseSeries exp_apply(const VectorField& x, const TransverseSeries& f, const GaussianRational& t) {
  TransverseSeries out = f, term = f;
  if (t.is_zero()) return out;
  for (int k = 1;; ++k) {
    if (k > kSeriesGuard) throw PreconditionError("Lie series did not terminate; field is not nilpotent");
    term = apply(x, term) * (t / GaussianRational(k));
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

Automorphism exp(const VectorField& x, const GaussianRational& t) {
  if (!is_nilpotent(x)) throw PreconditionError("exp requires a nilpotent vector field");
  std::vector<TransverseSeries> z;
  for (int i = 0; i < x.n(); ++i) z.push_back(exp_apply(x, TransverseSeries::z(x.shape(), i), t));
  return {exp_apply(x, TransverseSeries::x(x.shape()), t), std::move(z)};
}

NumericSeries NumericSeries::from(const TransverseSeries& s) {
  NumericSeries out{s.shape(), {}};
  for (const auto& [k, v] : s.terms())
    for (const auto& [e, c] : v.terms()) out.terms.push_back({k, e, c.to_complex()});
  return out;
}

std::complex<double> NumericSeries::evaluate(std::complex<double> x, const std::vector<std::complex<double>>& z) const {
  std::complex<double> sum = 0;
  for (const auto& t : terms) {
    std::complex<double> v = t.c * std::pow(x, t.x_exponent);
    for (std::size_t i = 0; i < t.k.size(); ++i)
      for (int p = 0; p < t.k[i]; ++p) v *= z[i];
    sum += v;
  }
  return sum;
}

NumericAutomorphism exp(const VectorField& x, std::complex<double> t) {
  if (!is_nilpotent(x)) throw PreconditionError("exp requires a nilpotent vector field");
  auto numeric_image = [&](const TransverseSeries& coord) {
    std::map<std::pair<Exponent, int>, std::complex<double>> acc;
    TransverseSeries term = coord;
    std::complex<double> tk = 1;
    for (int k = 0;; ++k) {
      if (k > kSeriesGuard) throw PreconditionError("Lie series did not terminate");
      if (k > 0) {
        term = apply(x, term) * GaussianRational(Rational(1, k));
        tk *= t;
      }
      if (term.is_zero()) break;
      for (const auto& [kk, v] : term.terms())
        for (const auto& [e, c] : v.terms()) acc[{kk, e}] += tk * c.to_complex();
    }
    NumericSeries out{x.shape(), {}};
    for (const auto& [key, c] : acc)
      if (c != std::complex<double>(0)) out.terms.push_back({key.first, key.second, c});
    return out;
  };
  NumericAutomorphism out{numeric_image(TransverseSeries::x(x.shape())), {}};
  for (int i = 0; i < x.n(); ++i) out.img_z.push_back(numeric_image(TransverseSeries::z(x.shape(), i)));
  return out;
}

VectorField log(const Automorphism& phi) {
  if (!phi.is_tangent_to_identity(1)) throw PreconditionError("log requires an automorphism tangent to the identity");
  auto log_of = [&](const TransverseSeries& coord) {
    TransverseSeries sum(coord.shape()), term = coord;
    for (int k = 1;; ++k) {
      if (k > phi.shape().degree_cap + 2) throw PreconditionError("log series did not terminate");
      term = phi.apply(term) - term;
      if (term.is_zero()) break;
      GaussianRational c(Rational(k % 2 == 1 ? 1 : -1, k));
      sum += term * c;
    }
    return sum;
  };
  std::vector<TransverseSeries> b;
  for (int i = 0; i < phi.n(); ++i) b.push_back(log_of(TransverseSeries::z(phi.shape(), i)));
  return {log_of(TransverseSeries::x(phi.shape())), std::move(b)};
}

Automorphism invert(const Automorphism& phi) {
  if (!phi.fixes_x()) throw UsageError("invert requires the x-image to be x");
  const Shape& shape = phi.shape();
  const int n = phi.n();
  LaurentMatrix a_inv = invert_linear_part(phi.linear_part(), shape);
  // phi(z) = A z + N(z); the inverse solves psi = A^{-1}(z - N(psi)).
  std::vector<TransverseSeries> nonlinear;
  for (int i = 0; i < n; ++i) {
    TransverseSeries r = phi.img_z(i);
    TransverseSeries lin(shape);
    for (int j = 0; j < n; ++j) lin.add_term(unit_exponent(n, j), r.coeff(unit_exponent(n, j)));
    nonlinear.push_back(r - lin);
  }
  auto apply_a_inv = [&](const std::vector<TransverseSeries>& v) {
    std::vector<TransverseSeries> out;
    for (int i = 0; i < n; ++i) {
      TransverseSeries s(shape);
      for (int j = 0; j < n; ++j)
        s += v[static_cast<std::size_t>(j)].times(a_inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      out.push_back(std::move(s));
    }
    return out;
  };
  std::vector<TransverseSeries> coords;
  for (int i = 0; i < n; ++i) coords.push_back(TransverseSeries::z(shape, i));
  std::vector<TransverseSeries> psi = apply_a_inv(coords);
  for (int iter = 1; iter < shape.degree_cap; ++iter) {
    PowerCache cache(psi);
    std::vector<TransverseSeries> rhs;
    for (int i = 0; i < n; ++i)
      rhs.push_back(coords[static_cast<std::size_t>(i)] - substitute_z(nonlinear[static_cast<std::size_t>(i)], cache));
    psi = apply_a_inv(rhs);
  }
  return {TransverseSeries::x(shape), std::move(psi)};
}

VectorField pushforward(const Automorphism& phi, const Automorphism& phi_inverse, const VectorField& x) {
  require_same_shape(phi.shape(), x.shape(), "pushforward");
  std::vector<TransverseSeries> b;
  for (int i = 0; i < x.n(); ++i) b.push_back(phi.apply(apply(x, phi_inverse.img_z(i))));
  return {phi.apply(apply(x, phi_inverse.img_x())), std::move(b)};
}

VectorField pushforward(const Automorphism& phi, const VectorField& x) { return pushforward(phi, invert(phi), x); }

VectorField adjoint_exp(const VectorField& y, const VectorField& x, const GaussianRational& t) {
  VectorField sum = x, term = x;
  if (t.is_zero()) return sum;
  for (int k = 1;; ++k) {
    if (k > kSeriesGuard) throw PreconditionError("adjoint series did not terminate");
    term = bracket(y, term) * (t / GaussianRational(k));
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

ExpDecomposition exp_decomposition(const Automorphism& phi) {
  if (!phi.is_x_normalized()) throw PreconditionError("exponential decomposition requires an x-normalized automorphism");
  ExactMatrix lin = constant_terms(phi.linear_part());
  Automorphism a = Automorphism::linear(phi.shape(), lin);
  Automorphism a_inv = Automorphism::linear(phi.shape(), invert_matrix(lin));
  return {a, log(compose(phi, a_inv))};
}

}  // namespace xnf
