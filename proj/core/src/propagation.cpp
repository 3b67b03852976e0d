#include "covlyap/propagation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "covlyap/errors.hpp"

namespace covlyap {

namespace {

// Number of equal RK4 steps covering [t0, t1] with width <= step.
int step_count(double t0, double t1, double step) {
  const double span = t1 - t0;
  if (span == 0.0) return 0;
  return static_cast<int>(std::ceil(span / step - 1e-12));
}

}  // namespace

double SymplecticMatrix::symplectic_defect() const {
  const int n = static_cast<int>(Z.rows()) / 2;
  const Eigen::MatrixXd J = symplectic_form(n);
  return (Z.transpose() * J * Z - J).cwiseAbs().maxCoeff();
}

double SymplecticMatrix::scaled_symplectic_defect() const {
  const double norm = Z.operatorNorm();
  return symplectic_defect() / std::max(1.0, norm * norm);
}

SymplecticMatrix propagate_fundamental(const QuadraticModel& model, double t0,
                                       double t1, double step,
                                       const PropagationOptions& opts) {
  if (!(step > 0.0)) throw std::domain_error("propagate_fundamental: step <= 0");
  if (!(t1 >= t0)) throw std::domain_error("propagate_fundamental: t1 < t0");
  const int dim = 2 * model.n_modes();
  Eigen::MatrixXd Z = Eigen::MatrixXd::Identity(dim, dim);
  const int n = step_count(t0, t1, step);
  if (n == 0) return {Z, t0, t1};
  const double h = (t1 - t0) / n;
  Eigen::MatrixXd k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim);
  for (int i = 0; i < n; ++i) {
    const double t = t0 + i * h;
    k1.noalias() = flow_generator(model, t) * Z;
    const Eigen::MatrixXd a_mid = flow_generator(model, t + 0.5 * h);
    k2.noalias() = a_mid * (Z + 0.5 * h * k1);
    k3.noalias() = a_mid * (Z + 0.5 * h * k2);
    k4.noalias() = flow_generator(model, t + h) * (Z + h * k3);
    Z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(Z.cwiseAbs().maxCoeff() <= opts.max_norm)) {
      throw DynamicsOverflowError(
          "dynamics overflow: fundamental matrix exceeded norm bound at t = " +
              std::to_string(t + h),
          t + h);
    }
  }
  return {std::move(Z), t0, t1};
}

SymplecticMatrix monodromy(const QuadraticModel& model, double step,
                           const PropagationOptions& opts) {
  if (!model.period()) {
    throw std::domain_error("monodromy: model has no period");
  }
  return propagate_fundamental(model, 0.0, *model.period(), step, opts);
}

GaussianState evolve_covariance(const GaussianState& state,
                                const SymplecticMatrix& propagator) {
  const auto& Z = propagator.Z;
  if (Z.rows() != state.cov().rows()) {
    throw std::invalid_argument("evolve_covariance: dimension mismatch");
  }
  Eigen::MatrixXd cov = Z * state.cov() * Z.transpose();
  cov = ((cov + cov.transpose()) / 2.0).eval();  // kill asymmetry drift
  return GaussianState(Z * state.mean(), std::move(cov));
}

}  // namespace covlyap
