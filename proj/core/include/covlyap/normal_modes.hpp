#pragma once

#include "covlyap/quadratic_model.hpp"

namespace covlyap {

/// Normal-mode stiffnesses and mixing angle of the coupled parametric model.
/// alpha_pm are the eigenvalues of the static stiffness
/// [[w1^2 + g, -g], [-g, w2^2 + g]]; each normal mode then obeys a Mathieu
/// equation with parameters (alpha_pm, q).
struct NormalModeParams {
  double alpha_plus;
  double alpha_minus;
  double theta;  // mixing angle, tan(2 theta) = 2g / (w2^2 - w1^2), in (0, pi/4)
};

/// Requires g > 0 and omega2_sq > omega1_sq.
NormalModeParams normal_mode_parameters(double omega1_sq, double omega2_sq,
                                        double g);

/// Upper Lyapunov exponent of the coupled parametric model via its normal
/// modes: max over alpha_pm of |Im phi(alpha_pm, q)|. Agrees with the
/// lyapunov_upper of the full 4x4 monodromy to integration tolerance.
double coupled_lyapunov(const QuadraticModel& model, double step);

}  // namespace covlyap
