#include "covlyap/mathieu.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "covlyap/propagation.hpp"
#include "covlyap/quadratic_model.hpp"

namespace covlyap {

namespace {

constexpr double kMarginalTol = 1e-12;

// One RK4 pass of the complex solution z' = A(t) z over [0, pi] accumulating
// the continuous phase of the x component. For an elliptic monodromy the
// eigensolution never vanishes (Im(conj(x) p) is a conserved Wronskian), so
// the winding is well defined and equals phi * pi without mod-2 aliasing.
double winding_over_period(const QuadraticModel& model,
                           Eigen::Vector2cd z, double step) {
  const double T = std::numbers::pi;
  const int n = static_cast<int>(std::ceil(T / step - 1e-12));
  const double h = T / n;
  double phase = 0.0;
  std::complex<double> x_prev = z(0);
  for (int i = 0; i < n; ++i) {
    const double t = i * h;
    const Eigen::Matrix2d a1 = flow_generator(model, t);
    const Eigen::Matrix2d a2 = flow_generator(model, t + 0.5 * h);
    const Eigen::Matrix2d a4 = flow_generator(model, t + h);
    const Eigen::Vector2cd k1 = a1 * z;
    const Eigen::Vector2cd k2 = a2 * (z + 0.5 * h * k1);
    const Eigen::Vector2cd k3 = a2 * (z + 0.5 * h * k2);
    const Eigen::Vector2cd k4 = a4 * (z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    phase += std::arg(z(0) / x_prev);
    x_prev = z(0);
  }
  return phase;
}

}  // namespace

MathieuBasis mathieu_basis(double alpha, double q, double t, double step) {
  if (!(step > 0.0)) throw std::domain_error("mathieu_basis: step <= 0");
  if (!(t >= 0.0)) throw std::domain_error("mathieu_basis: t must be >= 0");
  const auto model = QuadraticModel::single_parametric(alpha, q);
  // The fundamental matrix columns are exactly (C, Cdot) and (S, Sdot).
  const SymplecticMatrix Z = propagate_fundamental(model, 0.0, t, step);
  return {Z.Z(0, 0), Z.Z(0, 1), Z.Z(1, 0), Z.Z(1, 1)};
}

std::complex<double> mathieu_characteristic_exponent(double alpha, double q,
                                                     double step) {
  if (!(step > 0.0)) {
    throw std::domain_error("mathieu_characteristic_exponent: step <= 0");
  }
  const double T = std::numbers::pi;
  const auto model = QuadraticModel::single_parametric(alpha, q);
  const SymplecticMatrix M = monodromy(model, step);
  const double tr = M.Z.trace();

  if (std::abs(tr) > 2.0 + kMarginalTol) {
    // Hyperbolic: real multipliers rho, 1/rho. phi = a + i ln(rho_max)/pi
    // with a = 0 for positive multipliers and a = 1 for negative ones.
    const double rho_max =
        (std::abs(tr) + std::sqrt(tr * tr - 4.0)) / 2.0;
    return {tr > 0.0 ? 0.0 : 1.0, std::log(rho_max) / T};
  }

  if (std::abs(tr) < 2.0 - kMarginalTol) {
    // Elliptic: integrate the complex eigensolution and read off its
    // winding; this resolves the 2-aliasing of acos(tr/2) so that
    // phi(alpha, 0) = sqrt(alpha) for every stable band.
    Eigen::EigenSolver<Eigen::Matrix2d> solver(M.Z);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("mathieu: monodromy eigensolver failed");
    }
    const Eigen::Vector2cd v = solver.eigenvectors().col(0);
    const double phase = winding_over_period(model, v, step);
    return {std::abs(phase) / T, 0.0};
  }

  // Marginal |tr| = 2: multiplier +-1, phi integer. The winding of any
  // complex solution with nonzero Wronskian pins the integer; parity comes
  // from the multiplier sign.
  Eigen::Vector2cd seed;
  seed << std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 1.0);
  const double raw = winding_over_period(model, seed, step) / T;
  const int parity = tr > 0.0 ? 0 : 1;
  const double a =
      parity + 2.0 * std::round((std::abs(raw) - parity) / 2.0);
  return {std::max(0.0, a), 0.0};
}

MathieuSolution solve_mathieu(double alpha, double q, double step) {
  return {alpha, q, step, mathieu_characteristic_exponent(alpha, q, step)};
}

}  // namespace covlyap
