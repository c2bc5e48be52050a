#pragma once

#include <numbers>

#include "xnf/holonomy.hpp"

namespace xnf::testing {

constexpr double kPi = std::numbers::pi;
inline const Complex kTwoPiI{0.0, 2.0 * kPi};

// Independent oracle: fixed-step RK4 on the point equation of the resonant
// example around the unit circle, dz/dt = 2 pi i (-z + e^{2 pi i t} z^2).
inline Complex rk4_return(Complex z) {
  auto rhs = [](double t, Complex w) { return kTwoPiI * (-w + std::exp(kTwoPiI * t) * w * w); };
  const int steps = 4000;
  const double h = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    Complex k1 = rhs(t, z), k2 = rhs(t + h / 2, z + h / 2 * k1), k3 = rhs(t + h / 2, z + h / 2 * k2),
            k4 = rhs(t + h, z + h * k3);
    z += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return z;
}

// Second-order coefficient from return-map samples: the symmetric quotient
// removes odd powers, Richardson extrapolation removes the h^2 term.
inline Complex richardson_c2(double h) {
  auto sym = [](double r) {
    auto quotient = [](double w) { return (rk4_return(w) - w) / (w * w); };
    return (quotient(r) + quotient(-r)) / 2.0;
  };
  return (4.0 * sym(h) - sym(2 * h)) / 3.0;
}

}  // namespace xnf::testing
