#include "xnf/series.hpp"

#include <algorithm>
#include <numeric>

namespace xnf {

int total_degree(const Exponent& k) { return std::accumulate(k.begin(), k.end(), 0); }

Exponent unit_exponent(int n, int i) {
  Exponent e(static_cast<std::size_t>(n), 0);
  e.at(static_cast<std::size_t>(i)) = 1;
  return e;
}

namespace {

void fill_exponents(int n, int pos, int remaining, Exponent& cur, std::vector<Exponent>& out) {
  if (pos == n - 1) {
    cur[static_cast<std::size_t>(pos)] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[static_cast<std::size_t>(pos)] = v;
    fill_exponents(n, pos + 1, remaining - v, cur, out);
  }
}

}  // namespace

std::vector<Exponent> exponents_of_degree(int n, int degree) {
  std::vector<Exponent> out;
  if (n <= 0 || degree < 0) return out;
  Exponent cur(static_cast<std::size_t>(n), 0);
  fill_exponents(n, 0, degree, cur, out);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

std::strong_ordering grlex_compare(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw UsageError("gr.lex comparison of exponents with different arity");
  if (auto c = total_degree(a) <=> total_degree(b); c != 0) return c;
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const { return grlex_compare(a, b) < 0; }

std::string Shape::str() const {
  std::string s = "n=" + std::to_string(n) + ", d=" + std::to_string(degree_cap);
  if (x_cap) s += ", x_cap=" + std::to_string(*x_cap);
  return s;
}

void require_same_shape(const Shape& a, const Shape& b, const char* where) {
  if (!(a == b)) throw UsageError(std::string(where) + ": shape mismatch (" + a.str() + " vs " + b.str() + ")");
}

Exponent VectorMonomialIndex::monomial() const {
  Exponent m = k;
  m.at(static_cast<std::size_t>(j)) += 1;
  return m;
}

bool VectorMonomialIndex::valid() const {
  if (j < 0 || j >= static_cast<int>(k.size())) return false;
  Exponent m = monomial();
  return std::all_of(m.begin(), m.end(), [](int v) { return v >= 0; });
}

std::strong_ordering grlex_compare(const VectorMonomialIndex& a, const VectorMonomialIndex& b) {
  if (auto c = grlex_compare(a.k, b.k); c != 0) return c;
  return a.j <=> b.j;
}

// --- TransverseSeries ------------------------------------------------------

void TransverseSeries::validate_shape() const {
  if (shape_.n < 1) throw UsageError("series needs at least one z-variable");
  if (shape_.degree_cap < 0) throw UsageError("negative degree cap");
  if (shape_.x_cap && *shape_.x_cap < 0) throw UsageError("negative x cap");
}

bool TransverseSeries::admits(const Exponent& k) const {
  if (static_cast<int>(k.size()) != shape_.n) throw UsageError("exponent arity does not match series");
  for (int v : k)
    if (v < 0) throw UsageError("negative z-exponent in series term");
  return total_degree(k) <= shape_.degree_cap;
}

LaurentPoly TransverseSeries::clip(LaurentPoly c) const {
  if (!shape_.x_cap || c.is_zero()) return c;
  if (!c.is_taylor()) throw UsageError("x-truncated series requires Taylor coefficients");
  return c.truncated_above(*shape_.x_cap);
}

TransverseSeries TransverseSeries::constant(const Shape& shape, const LaurentPoly& c) {
  return monomial(shape, Exponent(static_cast<std::size_t>(shape.n), 0), c);
}

TransverseSeries TransverseSeries::x(const Shape& shape) {
  return constant(shape, LaurentPoly::monomial(1, 1));
}

TransverseSeries TransverseSeries::z(const Shape& shape, int i) {
  if (i < 0 || i >= shape.n) throw UsageError("z-variable index out of range");
  return monomial(shape, unit_exponent(shape.n, i), LaurentPoly(1));
}

TransverseSeries TransverseSeries::monomial(const Shape& shape, const Exponent& k, const LaurentPoly& c) {
  TransverseSeries s(shape);
  s.add_term(k, c);
  return s;
}

LaurentPoly TransverseSeries::coeff(const Exponent& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? LaurentPoly{} : it->second;
}

void TransverseSeries::add_term(const Exponent& k, const LaurentPoly& c) {
  if (c.is_zero() || !admits(k)) return;
  LaurentPoly clipped = clip(c);
  if (clipped.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, clipped);
  if (!inserted) {
    it->second += clipped;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TransverseSeries& TransverseSeries::operator+=(const TransverseSeries& o) {
  require_same_shape(shape_, o.shape_, "series addition");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TransverseSeries& TransverseSeries::operator-=(const TransverseSeries& o) {
  require_same_shape(shape_, o.shape_, "series subtraction");
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

TransverseSeries& TransverseSeries::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

TransverseSeries operator*(const TransverseSeries& a, const TransverseSeries& b) {
  require_same_shape(a.shape_, b.shape_, "series multiplication");
  TransverseSeries out(a.shape_);
  const int cap = a.shape_.degree_cap;
  Exponent k(static_cast<std::size_t>(a.shape_.n));
  for (const auto& [ka, ca] : a.terms_) {
    const int da = total_degree(ka);
    for (const auto& [kb, cb] : b.terms_) {
      // Terms are sorted by degree, so the rest of b is beyond the cap too.
      if (da + total_degree(kb) > cap) break;
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
      out.add_term(k, ca * cb);
    }
  }
  return out;
}

TransverseSeries TransverseSeries::times(const LaurentPoly& c) const {
  TransverseSeries out(shape_);
  if (c.is_zero()) return out;
  for (const auto& [k, v] : terms_) out.add_term(k, v * c);
  return out;
}

TransverseSeries TransverseSeries::times_monomial(const Exponent& m, const LaurentPoly& c) const {
  TransverseSeries out(shape_);
  if (c.is_zero()) return out;
  const int dm = total_degree(m);
  Exponent k(m.size());
  for (const auto& [ka, v] : terms_) {
    if (total_degree(ka) + dm > shape_.degree_cap) break;
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + m[i];
    out.add_term(k, v * c);
  }
  return out;
}

TransverseSeries TransverseSeries::d_dx() const {
  TransverseSeries out(shape_);
  for (const auto& [k, v] : terms_) out.add_term(k, v.derivative());
  return out;
}

TransverseSeries TransverseSeries::d_dz(int i) const {
  if (i < 0 || i >= shape_.n) throw UsageError("d/dz index out of range");
  TransverseSeries out(shape_);
  const auto ui = static_cast<std::size_t>(i);
  for (const auto& [k, v] : terms_) {
    if (k[ui] == 0) continue;
    Exponent kk = k;
    kk[ui] -= 1;
    out.add_term(kk, v * GaussianRational(k[ui]));
  }
  return out;
}

std::optional<int> TransverseSeries::madic_order() const {
  if (terms_.empty()) return std::nullopt;
  return total_degree(terms_.begin()->first);
}

bool TransverseSeries::is_taylor() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_taylor(); });
}

TransverseSeries TransverseSeries::homogeneous(int degree) const {
  TransverseSeries out(shape_);
  for (const auto& [k, v] : terms_)
    if (total_degree(k) == degree) out.terms_.emplace(k, v);
  return out;
}

TransverseSeries TransverseSeries::reshaped(const Shape& target) const {
  if (target.n != shape_.n) throw UsageError("cannot reshape series to a different number of variables");
  TransverseSeries out(target);
  for (const auto& [k, v] : terms_) out.add_term(k, v);
  return out;
}

std::complex<double> TransverseSeries::evaluate(std::complex<double> x,
                                                const std::vector<std::complex<double>>& z) const {
  if (static_cast<int>(z.size()) != shape_.n) throw UsageError("evaluation point has wrong arity");
  std::complex<double> sum = 0;
  for (const auto& [k, v] : terms_) {
    std::complex<double> term = v.evaluate(x);
    for (std::size_t i = 0; i < k.size(); ++i)
      for (int p = 0; p < k[i]; ++p) term *= z[i];
    sum += term;
  }
  return sum;
}

std::string format_monomial(int x_exponent, const Exponent& k) {
  std::string out;
  auto add = [&](const std::string& var, int e) {
    if (e == 0) return;
    if (!out.empty()) out += '*';
    out += var;
    if (e != 1) out += "^" + std::to_string(e);
  };
  add("x", x_exponent);
  for (std::size_t i = 0; i < k.size(); ++i) add("z" + std::to_string(i + 1), k[i]);
  return out;
}

void append_signed_term(std::string& out, const GaussianRational& c, const std::string& factors) {
  bool negative = false;
  std::string body;
  auto with_factors = [&](std::string head) {
    return factors.empty() ? head : head + "*" + factors;
  };
  if (c.is_real()) {
    negative = sgn(c.re()) < 0;
    Rational r = abs(c.re());
    body = (r == 1 && !factors.empty()) ? factors : with_factors(r.get_str());
  } else if (sgn(c.re()) == 0) {
    negative = sgn(c.im()) < 0;
    Rational r = abs(c.im());
    body = with_factors(r == 1 ? std::string("i") : r.get_str() + "*i");
  } else {
    body = with_factors("(" + c.str() + ")");
  }
  if (out.empty()) {
    out = negative ? "-" + body : body;
  } else {
    out += negative ? " - " : " + ";
    out += body;
  }
}

std::string TransverseSeries::str() const {
  std::string out;
  for (const auto& [k, v] : terms_)
    for (const auto& [e, c] : v.terms()) append_signed_term(out, c, format_monomial(e, k));
  return out.empty() ? "0" : out;
}

TransverseSeries ts_arith(const TransverseSeries& f, const TransverseSeries& g, SeriesOp op) {
  return op == SeriesOp::add ? f + g : f * g;
}

std::optional<int> ts_madic_order(const TransverseSeries& f) { return f.madic_order(); }

bool ts_is_taylor(const TransverseSeries& f) { return f.is_taylor(); }

}  // namespace xnf
