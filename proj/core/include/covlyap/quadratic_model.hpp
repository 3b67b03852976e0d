#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <variant>

namespace covlyap {

enum class ModelKind {
  Ihe,                // regular oscillator coupled to an inverted one
  CoupledParametric,  // two cos(2t)-driven oscillators with bilinear coupling
  SingleParametric,   // one mode, Mathieu stiffness alpha - 2q cos(2t)
  CustomPeriodic,     // user-supplied symmetric stiffness K(t) with period T
};

struct IheParams {
  double omega1_sq;  // squared frequency of the system oscillator
  double lambda_sq;  // Lambda^2; the environment has omega2^2 = -Lambda^2
  double coupling;   // bilinear coupling lambda_c x1 x2
};

struct CoupledParametricParams {
  double omega1_sq;
  double omega2_sq;
  double q;  // drive amplitude: stiffness omega_i^2 + g - 2 q cos(2t)
  double g;  // spring coupling (g/2)(x1 - x2)^2; requires g > 0, w2^2 > w1^2
};

struct SingleParametricParams {
  double alpha;  // stiffness alpha - 2 q cos(2t): Mathieu normal form
  double q;
};

struct CustomPeriodicParams {
  std::function<Eigen::MatrixXd(double)> stiffness;  // symmetric n x n K(t)
  int n_modes;
  std::optional<double> period;  // nullopt for a time-independent stiffness
};

/// A time-dependent quadratic Hamiltonian
///   H(t) = sum_i p_i^2 / 2 + x^T K(t) x / 2
/// acting as the generator of linear phase-space flow. The parametric kinds
/// are pi-periodic in t (cos 2t drive); the IHE kind is time-independent.
class QuadraticModel {
 public:
  static QuadraticModel ihe(double omega1_sq, double lambda_sq,
                            double coupling);
  static QuadraticModel coupled_parametric(double omega1_sq, double omega2_sq,
                                           double q, double g);
  static QuadraticModel single_parametric(double alpha, double q);
  static QuadraticModel custom_periodic(
      std::function<Eigen::MatrixXd(double)> stiffness, int n_modes,
      std::optional<double> period);

  ModelKind kind() const { return kind_; }
  int n_modes() const { return n_modes_; }

  /// Drive period, or nullopt for time-independent models.
  std::optional<double> period() const { return period_; }

  /// Stiffness matrix K(t) of the equations of motion x'' = -K(t) x.
  Eigen::MatrixXd stiffness(double t) const;

  const IheParams& ihe_params() const;
  const CoupledParametricParams& coupled_params() const;
  const SingleParametricParams& single_params() const;

 private:
  using Params = std::variant<IheParams, CoupledParametricParams,
                              SingleParametricParams, CustomPeriodicParams>;

  QuadraticModel(ModelKind kind, int n_modes, std::optional<double> period,
                 Params params);

  ModelKind kind_;
  int n_modes_;
  std::optional<double> period_;
  Params params_;
};

/// Generator A(t) = J H(t) of the first-order flow z' = A(t) z with
/// z = (x1, p1, ...). Always traceless.
Eigen::MatrixXd flow_generator(const QuadraticModel& model, double t);

}  // namespace covlyap
