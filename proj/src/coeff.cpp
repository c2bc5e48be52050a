#include "xnf/coeff.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>

namespace xnf {

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero in Q[i]");
  Rational n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero in Q[i]");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

GaussianRational gq_arith(const GaussianRational& a, const GaussianRational& b, FieldOp op) {
  switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::sub: return a - b;
    case FieldOp::mul: return a * b;
    case FieldOp::div: return a / b;
  }
  throw UsageError("unknown field operation");
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) return imag;
  std::string out = re_.get_str();
  if (imag.front() != '-') out += '+';
  return out + imag;
}

namespace {

// Cursor over coefficient text; whitespace is skipped between tokens.
struct CoeffCursor {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::optional<std::string> digits() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) return std::nullopt;
    return std::string(s.substr(start, pos - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw UsageError("malformed coefficient '" + std::string(s) + "': " + what + " at offset " +
                     std::to_string(pos));
  }
};

// One signed summand: rational, rational*i, or i. Returns (value, is_imaginary).
std::pair<Rational, bool> parse_part(CoeffCursor& c, bool allow_unsigned) {
  int sign = 1;
  if (c.eat('-')) {
    sign = -1;
  } else if (!c.eat('+') && !allow_unsigned) {
    c.fail("expected sign");
  }
  if (c.eat('i')) return {Rational(sign), true};
  auto num = c.digits();
  if (!num) c.fail("expected digits");
  Rational value{mpz_class(*num)};
  if (c.eat('/')) {
    auto den = c.digits();
    if (!den) c.fail("expected denominator");
    mpz_class d(*den);
    if (d == 0) throw ArithmeticError("zero denominator in coefficient '" + std::string(c.s) + "'");
    value = Rational(mpz_class(*num), d);
    value.canonicalize();
  }
  value *= sign;
  if (c.eat('*')) {
    if (!c.eat('i')) c.fail("expected 'i' after '*'");
    return {value, true};
  }
  return {value, false};
}

}  // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
  CoeffCursor c{text};
  if (c.at_end()) c.fail("empty");
  Rational re = 0, im = 0;
  bool have_re = false, have_im = false;
  bool first = true;
  while (!c.at_end()) {
    auto [value, imaginary] = parse_part(c, first);
    first = false;
    bool& have = imaginary ? have_im : have_re;
    if (have) c.fail(imaginary ? "duplicate imaginary part" : "duplicate real part");
    have = true;
    (imaginary ? im : re) = value;
  }
  return {re, im};
}

// --- LaurentPoly -----------------------------------------------------------

LaurentPoly::LaurentPoly(const GaussianRational& c) {
  if (!c.is_zero()) terms_.emplace_back(0, c);
}

LaurentPoly LaurentPoly::monomial(const GaussianRational& c, int exponent) {
  LaurentPoly p;
  if (!c.is_zero()) p.terms_.emplace_back(exponent, c);
  return p;
}

int LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw UsageError("min_exponent of zero Laurent polynomial");
  return terms_.front().first;
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw UsageError("max_exponent of zero Laurent polynomial");
  return terms_.back().first;
}

GaussianRational LaurentPoly::coeff(int exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exponent) return it->second;
  return {};
}

void LaurentPoly::push_back_nonzero(int e, GaussianRational c) {
  if (!c.is_zero()) terms_.emplace_back(e, std::move(c));
}

namespace {

template <typename Combine>
std::vector<LaurentPoly::Term> merge_terms(const std::vector<LaurentPoly::Term>& a,
                                           const std::vector<LaurentPoly::Term>& b, Combine combine,
                                           bool negate_b) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, negate_b ? -ib->second : ib->second);
      ++ib;
    } else {
      GaussianRational c = combine(ia->second, ib->second);
      if (!c.is_zero()) out.emplace_back(ia->first, std::move(c));
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, [](const auto& x, const auto& y) { return x + y; }, false);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, [](const auto& x, const auto& y) { return x - y; }, true);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  if (b.size() == 1) {
    out.terms_.reserve(a.size());
    for (const auto& [e, c] : a.terms_) out.push_back_nonzero(e + b.terms_[0].first, c * b.terms_[0].second);
    return out;
  }
  if (a.size() == 1) return b * a;
  std::map<int, GaussianRational> acc;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
  for (auto& [e, c] : acc) out.push_back_nonzero(e, std::move(c));
  return out;
}

LaurentPoly LaurentPoly::derivative() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_)
    if (e != 0) out.terms_.emplace_back(e - 1, c * GaussianRational(e));
  return out;
}

LaurentPoly LaurentPoly::euler() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_)
    if (e != 0) out.terms_.emplace_back(e, c * GaussianRational(e));
  return out;
}

LaurentPoly LaurentPoly::truncated_above(int cap) const {
  LaurentPoly out;
  for (const auto& t : terms_) {
    if (t.first > cap) break;
    out.terms_.push_back(t);
  }
  return out;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.first += k;
  return out;
}

std::complex<double> LaurentPoly::evaluate(std::complex<double> x) const {
  std::complex<double> sum = 0;
  for (const auto& [e, c] : terms_) sum += c.to_complex() * std::pow(x, e);
  return sum;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")";
    if (e != 0) out += "*x^" + std::to_string(e);
  }
  return out;
}

LaurentPoly lp_arith(const LaurentPoly& f, const LaurentPoly& g, RingOp op) {
  return op == RingOp::add ? f + g : f * g;
}

bool lp_is_taylor(const LaurentPoly& f) { return f.is_taylor(); }

EulerSolution lp_euler_solve(const LaurentPoly& g, const GaussianRational& s) {
  EulerSolution out;
  for (const auto& [e, c] : g.terms()) {
    GaussianRational divisor = s + GaussianRational(e);
    if (divisor.is_zero()) {
      out.residual += LaurentPoly::monomial(c, e);
    } else {
      out.f += LaurentPoly::monomial(c / divisor, e);
    }
  }
  return out;
}

}  // namespace xnf
