#include "covlyap/quadratic_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace covlyap {

namespace {

void check_finite(std::initializer_list<double> vals, const char* what) {
  for (double v : vals) {
    if (!std::isfinite(v)) throw std::domain_error(std::string(what) + ": non-finite parameter");
  }
}

}  // namespace

QuadraticModel::QuadraticModel(ModelKind kind, int n_modes,
                               std::optional<double> period, Params params)
    : kind_(kind), n_modes_(n_modes), period_(period), params_(std::move(params)) {}

QuadraticModel QuadraticModel::ihe(double omega1_sq, double lambda_sq,
                                   double coupling) {
  check_finite({omega1_sq, lambda_sq, coupling}, "QuadraticModel::ihe");
  return QuadraticModel(ModelKind::Ihe, 2, std::nullopt,
                        IheParams{omega1_sq, lambda_sq, coupling});
}

QuadraticModel QuadraticModel::coupled_parametric(double omega1_sq,
                                                  double omega2_sq, double q,
                                                  double g) {
  check_finite({omega1_sq, omega2_sq, q, g}, "QuadraticModel::coupled_parametric");
  if (!(g > 0.0)) {
    throw std::domain_error("coupled_parametric: requires g > 0");
  }
  if (!(omega2_sq > omega1_sq)) {
    throw std::domain_error("coupled_parametric: requires omega2^2 > omega1^2");
  }
  return QuadraticModel(ModelKind::CoupledParametric, 2, std::numbers::pi,
                        CoupledParametricParams{omega1_sq, omega2_sq, q, g});
}

QuadraticModel QuadraticModel::single_parametric(double alpha, double q) {
  check_finite({alpha, q}, "QuadraticModel::single_parametric");
  return QuadraticModel(ModelKind::SingleParametric, 1, std::numbers::pi,
                        SingleParametricParams{alpha, q});
}

QuadraticModel QuadraticModel::custom_periodic(
    std::function<Eigen::MatrixXd(double)> stiffness, int n_modes,
    std::optional<double> period) {
  if (!stiffness) {
    throw std::invalid_argument("custom_periodic: null stiffness callback");
  }
  if (n_modes < 1) {
    throw std::domain_error("custom_periodic: n_modes must be >= 1");
  }
  if (period && !(*period > 0.0)) {
    throw std::domain_error("custom_periodic: period must be > 0");
  }
  return QuadraticModel(ModelKind::CustomPeriodic, n_modes, period,
                        CustomPeriodicParams{std::move(stiffness), n_modes, period});
}

const IheParams& QuadraticModel::ihe_params() const {
  if (kind_ != ModelKind::Ihe) throw std::logic_error("not an IHE model");
  return std::get<IheParams>(params_);
}

const CoupledParametricParams& QuadraticModel::coupled_params() const {
  if (kind_ != ModelKind::CoupledParametric) {
    throw std::logic_error("not a coupled parametric model");
  }
  return std::get<CoupledParametricParams>(params_);
}

const SingleParametricParams& QuadraticModel::single_params() const {
  if (kind_ != ModelKind::SingleParametric) {
    throw std::logic_error("not a single parametric model");
  }
  return std::get<SingleParametricParams>(params_);
}

Eigen::MatrixXd QuadraticModel::stiffness(double t) const {
  switch (kind_) {
    case ModelKind::Ihe: {
      const auto& p = std::get<IheParams>(params_);
      Eigen::MatrixXd K(2, 2);
      K << p.omega1_sq, p.coupling, p.coupling, -p.lambda_sq;
      return K;
    }
    case ModelKind::CoupledParametric: {
      // x1'' = -(w1^2 + g - 2q cos 2t) x1 + g x2 and symmetrically for x2:
      // the Mathieu normal form, whose normal modes carry parameters
      // (alpha_pm, q) with the alpha_pm of normal_mode_parameters.
      const auto& p = std::get<CoupledParametricParams>(params_);
      const double drive = 2.0 * p.q * std::cos(2.0 * t);
      Eigen::MatrixXd K(2, 2);
      K << p.omega1_sq + p.g - drive, -p.g, -p.g, p.omega2_sq + p.g - drive;
      return K;
    }
    case ModelKind::SingleParametric: {
      const auto& p = std::get<SingleParametricParams>(params_);
      Eigen::MatrixXd K(1, 1);
      K(0, 0) = p.alpha - 2.0 * p.q * std::cos(2.0 * t);
      return K;
    }
    case ModelKind::CustomPeriodic: {
      const auto& p = std::get<CustomPeriodicParams>(params_);
      Eigen::MatrixXd K = p.stiffness(t);
      if (K.rows() != n_modes_ || K.cols() != n_modes_) {
        throw std::domain_error("custom stiffness has wrong dimensions");
      }
      if ((K - K.transpose()).cwiseAbs().maxCoeff() >
          1e-12 * std::max(1.0, K.cwiseAbs().maxCoeff())) {
        throw std::domain_error("custom stiffness is not symmetric");
      }
      return K;
    }
  }
  throw std::logic_error("unreachable model kind");
}

Eigen::MatrixXd flow_generator(const QuadraticModel& model, double t) {
  if (!std::isfinite(t)) throw std::domain_error("flow_generator: non-finite t");
  const int n = model.n_modes();
  const Eigen::MatrixXd K = model.stiffness(t);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    A(2 * i, 2 * i + 1) = 1.0;  // x_i' = p_i
    for (int j = 0; j < n; ++j) {
      A(2 * i + 1, 2 * j) = -K(i, j);  // p_i' = -K_ij x_j
    }
  }
  return A;
}

}  // namespace covlyap
