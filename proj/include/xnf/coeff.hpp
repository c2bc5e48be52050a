#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace xnf {

using Rational = mpq_class;

/// Thrown on division by zero and other undefined field operations.
struct ArithmeticError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Thrown when operands have incompatible shapes or a call violates its contract.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An exact element of Q[i]. Both parts are kept canonical by GMP, so
/// equality is structural.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT: implicit from integers is intended
  GaussianRational(Rational re, Rational im = 0);

  static GaussianRational i() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  /// True iff the value is a rational integer.
  bool is_integer() const { return is_real() && re_.get_den() == 1; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator-(GaussianRational a) {
    a.re_ = -a.re_;
    a.im_ = -a.im_;
    return a;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Canonical text: `a`, `a/b`, `a/b*i`, `a/b+c/d*i` (unit imaginary parts print as `i`, `-i`).
  std::string str() const;
  /// Inverse of str(). Accepts whitespace and non-reduced fractions; throws
  /// UsageError on malformed text and ArithmeticError on a zero denominator.
  static GaussianRational parse(std::string_view text);

 private:
  Rational re_{0};
  Rational im_{0};
};

enum class FieldOp { add, sub, mul, div };
GaussianRational gq_arith(const GaussianRational& a, const GaussianRational& b, FieldOp op);

/// Exact Laurent polynomial in x over Q[i], stored as a strictly increasing
/// sparse list of (exponent, nonzero coefficient).
class LaurentPoly {
 public:
  using Term = std::pair<int, GaussianRational>;

  LaurentPoly() = default;
  LaurentPoly(const GaussianRational& c);  // NOLINT: constants embed implicitly
  static LaurentPoly monomial(const GaussianRational& c, int exponent);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int min_exponent() const;  // requires nonzero
  int max_exponent() const;  // requires nonzero
  GaussianRational coeff(int exponent) const;

  /// True iff no negative exponent is stored.
  bool is_taylor() const { return terms_.empty() || terms_.front().first >= 0; }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const GaussianRational& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= GaussianRational(-1); }
  friend LaurentPoly operator*(LaurentPoly a, const GaussianRational& c) { return a *= c; }
  friend LaurentPoly operator*(const GaussianRational& c, LaurentPoly a) { return a *= c; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

  /// d/dx
  LaurentPoly derivative() const;
  /// x * d/dx
  LaurentPoly euler() const;
  /// Drop every exponent above `cap`.
  LaurentPoly truncated_above(int cap) const;
  /// Multiply by x^k.
  LaurentPoly shifted(int k) const;

  std::complex<double> evaluate(std::complex<double> x) const;

  std::string str() const;

 private:
  void push_back_nonzero(int e, GaussianRational c);
  std::vector<Term> terms_;
};

enum class RingOp { add, mul };
LaurentPoly lp_arith(const LaurentPoly& f, const LaurentPoly& g, RingOp op);
bool lp_is_taylor(const LaurentPoly& f);

struct EulerSolution {
  LaurentPoly f;
  LaurentPoly residual;
};

/// Solves (x d/dx + s) f = g - residual, where residual holds exactly the
/// terms of g at exponent -s (the kernel of the operator).
EulerSolution lp_euler_solve(const LaurentPoly& g, const GaussianRational& s);

}  // namespace xnf
