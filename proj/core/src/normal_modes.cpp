#include "covlyap/normal_modes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "covlyap/mathieu.hpp"

namespace covlyap {

NormalModeParams normal_mode_parameters(double omega1_sq, double omega2_sq,
                                        double g) {
  if (!(g > 0.0)) {
    throw std::domain_error("normal_mode_parameters: requires g > 0");
  }
  if (!(omega2_sq > omega1_sq)) {
    throw std::domain_error(
        "normal_mode_parameters: requires omega2^2 > omega1^2");
  }
  const double mean = (omega1_sq + omega2_sq) / 2.0 + g;
  const double split =
      std::sqrt(g * g + (omega2_sq - omega1_sq) * (omega2_sq - omega1_sq) / 4.0);
  const double theta =
      0.5 * std::atan2(2.0 * g, omega2_sq - omega1_sq);  // in (0, pi/4)
  return {mean + split, mean - split, theta};
}

double coupled_lyapunov(const QuadraticModel& model, double step) {
  const auto& p = model.coupled_params();
  const auto nm = normal_mode_parameters(p.omega1_sq, p.omega2_sq, p.g);
  // Each normal mode is a Mathieu equation with parameters (alpha_pm, q);
  // the unstable one (if any) sets the growth rate.
  const double lam_plus =
      std::abs(mathieu_characteristic_exponent(nm.alpha_plus, p.q, step).imag());
  const double lam_minus =
      std::abs(mathieu_characteristic_exponent(nm.alpha_minus, p.q, step).imag());
  return std::max(lam_plus, lam_minus);
}

}  // namespace covlyap
