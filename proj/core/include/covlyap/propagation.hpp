#pragma once

#include <Eigen/Dense>

#include "covlyap/gaussian_state.hpp"
#include "covlyap/quadratic_model.hpp"

namespace covlyap {

/// Fundamental solution Z(t1, t0) of z' = A(t) z, Z(t0) = I.
struct SymplecticMatrix {
  Eigen::MatrixXd Z;
  double t0 = 0.0;
  double t1 = 0.0;

  /// Max-abs entry of Z^T J Z - J.
  double symplectic_defect() const;

  /// Defect divided by max(1, ||Z||_2^2). For growing flows the absolute
  /// defect scales with ||Z||^2; this is the scale-free figure of merit.
  double scaled_symplectic_defect() const;
};

struct PropagationOptions {
  /// Max-abs entry bound; exceeding it raises DynamicsOverflowError.
  double max_norm = 1e120;
};

/// Integrates Z' = A(t) Z from t0 to t1 with classical fixed-step RK4.
/// The step is shrunk (never stretched) so that an integer number of steps
/// lands exactly on t1.
SymplecticMatrix propagate_fundamental(const QuadraticModel& model, double t0,
                                       double t1, double step,
                                       const PropagationOptions& opts = {});

/// One-period fundamental matrix Z(T, 0) of a periodic model.
SymplecticMatrix monodromy(const QuadraticModel& model, double step,
                           const PropagationOptions& opts = {});

/// cov -> Z cov Z^T, mean -> Z mean. Symplectic eigenvalues are preserved.
GaussianState evolve_covariance(const GaussianState& state,
                                const SymplecticMatrix& propagator);

}  // namespace covlyap
