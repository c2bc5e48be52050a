#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "xnf/lie.hpp"

namespace xnf {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The lifted leaf left the numerical domain.
struct EscapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Truncated complex map z |-> (sum_K c_{i,K} z^K)_i with 1 <= |K| <= degree.
struct HolonomyJet {
  int n = 1;
  int degree = 1;
  std::vector<std::map<Exponent, Complex, GrlexLess>> coeffs;

  static HolonomyJet identity(int n, int degree);
  /// The z-images of phi restricted to the transversal {x = x0}; constant terms are dropped.
  static HolonomyJet from_automorphism(const Automorphism& phi, Complex x0 = 1.0);

  Complex coeff(int i, const Exponent& k) const;
  Point evaluate(const Point& z) const;
  /// Largest coefficient magnitude.
  double max_abs() const;
};

/// outer(inner(z)) truncated at the common degree.
HolonomyJet compose(const HolonomyJet& outer, const HolonomyJet& inner);
HolonomyJet operator-(const HolonomyJet& a, const HolonomyJet& b);

/// Curve t |-> exp(log_start + t (log_end - log_start)), t in [0, 1]. Radial
/// rays and circular arcs are both of this form, and the curve never meets 0.
struct PathSegment {
  Complex log_start;
  Complex log_end;

  static PathSegment radial(double r0, double r1, double turns);
  static PathSegment arc(double radius, double turns0, double turns1);
};
using PathSpec = std::vector<PathSegment>;

struct NumericOptions {
  double tol = 1e-10;
  double escape_radius = 1e6;
};

/// Transverse return map of X along the circle |x| = 1 based at x = 1, as a jet of degree d.
HolonomyJet holonomy_jet(const VectorField& x, int d, const NumericOptions& opt = {}, int windings = 1);
/// Jet transport along an arbitrary path.
HolonomyJet transport_jet(const VectorField& x, int d, const PathSpec& path, const NumericOptions& opt = {});

/// Follows the leaf of X through (x0, z0) while x runs along `path`; returns z at the end.
Point path_lift(const VectorField& x, const Point& z0, const PathSpec& path, const NumericOptions& opt = {});

/// max |h_X o psi - psi o h_Y| over coefficients, where Y = pushforward(Psi, X)
/// and psi is Psi on the transversal x = 1.
double conjugacy_residual(const VectorField& x, const Automorphism& psi, int d, const NumericOptions& opt = {});

/// Lifts (x0, z0) along X to x = 1 (radially, then along the unit circle with
/// `windings` extra turns), applies phi and returns along the reversed path through Y.
Point transport_conjugacy(const VectorField& x, const VectorField& y, const HolonomyJet& phi, Complex x0,
                          const Point& z0, const NumericOptions& opt = {}, int windings = 0);

/// z-part of the numeric point map of an automorphism at (x, z).
Point apply_point(const Automorphism& phi, Complex x, const Point& z);

}  // namespace xnf
