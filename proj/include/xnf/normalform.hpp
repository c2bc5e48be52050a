#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "xnf/lie.hpp"
#include "xnf/resonance.hpp"

namespace xnf {

/// Surviving term coeff * x^x_exp * z^K L(e_j) of a normal form.
struct ResonantCoefficient {
  VectorMonomialIndex index;
  int x_exp = 0;
  GaussianRational coeff;
};

struct NormalFormResult {
  EigenData mu;
  VectorField normal_field;
  Automorphism normalizer;
  std::vector<ResonantCoefficient> resonant_coeffs;
  std::vector<int> jordan_eps;  // eps_i = 1 marks z_{i-1} d/dz_i; eps_1 is always 0
  int steps = 0;
};

/// Eliminates every nonresonant term of X in gr.lex (K, j) order.
/// X must have d/dx-component x and z-components in m, with Taylor coefficients of x-degree <= x_cap; its
/// constant z-linear part must be lower triangular (b_i only involves
/// z_1..z_i) with diagonal mu, with couplings between equal eigenvalues only
/// on the subdiagonal and equal to 0 or 1. Computation happens modulo x^{x_cap+1}.
/// Constant couplings between distinct eigenvalues are removed first; `on_step`
/// then sees each eliminated index and the field right after that step.
using NormalizeObserver = std::function<void(const VectorMonomialIndex&, const VectorField&)>;
NormalFormResult normalize(const VectorField& x, const EigenData& mu, int x_cap, const NormalizeObserver& on_step = {});

/// pushforward(phi, x) - y, computed in phi's ring; zero certifies the conjugation.
VectorField verify_conjugation(const Automorphism& phi, const VectorField& x, const VectorField& y);

/// x^l z^K z_j d/dz_j, or x d/dx when `euler` is set.
struct CentralizerMonomial {
  VectorMonomialIndex index;
  int l = 0;
  bool euler = false;
  bool x_normalized = true;  // false for x-dependent z-linear terms

  VectorField field(const Shape& shape) const;
};

struct CentralizerResult {
  std::vector<CentralizerMonomial> basis;
  bool negative_l = false;
};

/// Monomial basis of the fields with x-exponents in [window.first, window.second]
/// and z-degree <= d commuting with x d/dx + L(mu).
CentralizerResult centralizer_solve(const EigenData& mu, std::pair<int, int> x_window, int d);
CentralizerResult centralizer_solve(const NormalFormResult& nf, std::pair<int, int> x_window, int d);

struct Theorem1Check {
  bool holds = true;
  bool ntnr = true;
  std::optional<CentralizerMonomial> offending;
};

/// No transverse negative resonance implies no centralizer monomial with l < 0.
Theorem1Check check_theorem1(const EigenData& mu, std::pair<int, int> x_window, int d);

}  // namespace xnf
