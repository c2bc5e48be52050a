#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xnf/series.hpp"

namespace xnf {

/// A documented precondition of an operation does not hold for its input.
struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

using LaurentMatrix = std::vector<std::vector<LaurentPoly>>;
using ExactMatrix = std::vector<std::vector<GaussianRational>>;

/// Derivation a d/dx + sum_i b_i d/dz_i of the truncated ring.
class VectorField {
 public:
  explicit VectorField(const Shape& shape);
  VectorField(TransverseSeries a, std::vector<TransverseSeries> b);

  /// f(x) z^K z_j d/dz_j
  static VectorField monomial(const Shape& shape, const VectorMonomialIndex& idx, const LaurentPoly& f);
  /// x d/dx
  static VectorField euler(const Shape& shape);
  /// L(mu) = sum mu_i z_i d/dz_i
  static VectorField diagonal(const Shape& shape, const std::vector<GaussianRational>& mu);
  /// sum_ij m[i][j] z_j d/dz_i
  static VectorField linear(const Shape& shape, const ExactMatrix& m);

  const Shape& shape() const { return a_.shape(); }
  int n() const { return shape().n; }
  const TransverseSeries& a() const { return a_; }
  const std::vector<TransverseSeries>& b() const { return b_; }
  const TransverseSeries& b(int i) const { return b_.at(static_cast<std::size_t>(i)); }
  bool is_zero() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(const GaussianRational& c);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator-(VectorField a) { return a *= GaussianRational(-1); }
  friend VectorField operator*(VectorField a, const GaussianRational& c) { return a *= c; }
  friend VectorField operator*(const GaussianRational& c, VectorField a) { return a *= c; }
  friend bool operator==(const VectorField&, const VectorField&) = default;

  /// The field f*X (module structure over the series ring).
  VectorField times(const TransverseSeries& f) const;

  /// Coefficients of z_j in b_i, as functions of x.
  LaurentMatrix linear_part() const;
  /// True iff a = x, the z-linear part is constant and b_i - linear part lies in m^2.
  bool is_x_normalized() const;

  VectorField reshaped(const Shape& target) const;

  /// Canonical text, `x*dx - z1*dz1 + x*z1^2*dz1`; "0" for the zero field.
  std::string str() const;

 private:
  TransverseSeries a_;
  std::vector<TransverseSeries> b_;
};

/// Algebra endomorphism given by the images of the coordinates,
/// f |-> f(img_x, img_z). All compositions are operator compositions.
class Automorphism {
 public:
  Automorphism(TransverseSeries img_x, std::vector<TransverseSeries> img_z);

  static Automorphism identity(const Shape& shape);
  static Automorphism linear(const Shape& shape, const ExactMatrix& m);

  const Shape& shape() const { return img_x_.shape(); }
  int n() const { return shape().n; }
  const TransverseSeries& img_x() const { return img_x_; }
  const std::vector<TransverseSeries>& img_z() const { return img_z_; }
  const TransverseSeries& img_z(int i) const { return img_z_.at(static_cast<std::size_t>(i)); }

  bool fixes_x() const;
  bool is_identity() const;
  /// Degree-one coefficients of the z-images.
  LaurentMatrix linear_part() const;
  /// img_x = x, constant invertible z-linear part, higher terms in m^2.
  bool is_x_normalized() const;
  /// Phi(x) = x and Phi(z_i) = z_i modulo m^{k+1}.
  bool is_tangent_to_identity(int k) const;

  /// Substitution f(img_x, img_z).
  TransverseSeries apply(const TransverseSeries& f) const;

  friend bool operator==(const Automorphism&, const Automorphism&) = default;

  std::string str() const;

 private:
  TransverseSeries img_x_;
  std::vector<TransverseSeries> img_z_;
};

/// Operator composition outer o inner: f |-> outer(inner(f)).
Automorphism compose(const Automorphism& outer, const Automorphism& inner);

TransverseSeries apply(const VectorField& x, const TransverseSeries& f);
VectorField bracket(const VectorField& x, const VectorField& y);
bool is_k_flat(const VectorField& x, int k);
bool is_nilpotent(const VectorField& x);

/// sum_k t^k/k! X^k(f) for nilpotent X.
TransverseSeries exp_apply(const VectorField& x, const TransverseSeries& f, const GaussianRational& t = 1);
Automorphism exp(const VectorField& x, const GaussianRational& t = 1);

/// Complex-float image of a truncated series: terms c x^e z^K.
struct NumericTerm {
  Exponent k;
  int x_exponent = 0;
  std::complex<double> c;
};
struct NumericSeries {
  Shape shape;
  std::vector<NumericTerm> terms;

  static NumericSeries from(const TransverseSeries& s);
  std::complex<double> evaluate(std::complex<double> x, const std::vector<std::complex<double>>& z) const;
};
struct NumericAutomorphism {
  NumericSeries img_x;
  std::vector<NumericSeries> img_z;
};
/// Float-time exponential; the exact Lie series is summed first and then
/// evaluated at t.
NumericAutomorphism exp(const VectorField& x, std::complex<double> t);

VectorField log(const Automorphism& phi);
Automorphism invert(const Automorphism& phi);
/// Phi o X o Phi^{-1}.
VectorField pushforward(const Automorphism& phi, const VectorField& x);
/// Same, with the inverse supplied (needed when Phi moves x).
VectorField pushforward(const Automorphism& phi, const Automorphism& phi_inverse, const VectorField& x);

/// Lie series sum_k ad_Y^k(X)/k!, equal to pushforward(exp(Y), X) when Y is nilpotent.
VectorField adjoint_exp(const VectorField& y, const VectorField& x, const GaussianRational& t = 1);

struct ExpDecomposition {
  Automorphism linear;
  VectorField generator;
};
/// Phi = compose(exp(Z), A): as point maps this is A after exp(Z), so
/// Phi = A o exp Z in coordinates. A is the z-linear part of Phi and Z is 1-flat.
ExpDecomposition exp_decomposition(const Automorphism& phi);

/// Exact inverse of a constant matrix over Q[i]; throws on singular input.
ExactMatrix invert_matrix(const ExactMatrix& m);

}  // namespace xnf
