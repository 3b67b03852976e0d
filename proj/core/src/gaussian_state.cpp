#include "covlyap/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace covlyap {

namespace {

constexpr double kSymmetryRelTol = 1e-12;
constexpr double kUncertaintySlack = 1e-9;

}  // namespace

Eigen::MatrixXd symplectic_form(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("symplectic_form: n_modes < 1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    J(2 * i, 2 * i + 1) = 1.0;
    J(2 * i + 1, 2 * i) = -1.0;
  }
  return J;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0) {
    throw std::invalid_argument("symplectic_eigenvalues: matrix must be 2n x 2n");
  }
  const int n = static_cast<int>(cov.rows()) / 2;
  // Eigenvalues of J cov come in pairs +-i nu_j; the moduli of the
  // positive-imaginary ones are the Williamson eigenvalues.
  Eigen::MatrixXd JC = symplectic_form(n) * cov;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(JC, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symplectic_eigenvalues: eigensolver failed");
  }
  std::vector<double> nus;
  nus.reserve(n);
  for (int i = 0; i < 2 * n; ++i) {
    if (solver.eigenvalues()(i).imag() > 0.0) {
      nus.push_back(std::abs(solver.eigenvalues()(i)));
    }
  }
  // Roundoff can collapse a conjugate pair onto the real axis; fall back to
  // moduli sorted descending, one per pair.
  if (static_cast<int>(nus.size()) != n) {
    std::vector<double> mods(2 * n);
    for (int i = 0; i < 2 * n; ++i) mods[i] = std::abs(solver.eigenvalues()(i));
    std::sort(mods.begin(), mods.end(), std::greater<>());
    nus.clear();
    for (int i = 0; i < n; ++i) nus.push_back(mods[2 * i]);
  }
  std::sort(nus.begin(), nus.end());
  return nus;
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (cov_.rows() != cov_.cols()) {
    throw std::invalid_argument("GaussianState: covariance must be square");
  }
  if (cov_.rows() % 2 != 0 || cov_.rows() == 0 || mean_.size() != cov_.rows()) {
    throw std::invalid_argument(
        "GaussianState: mean length must equal covariance size 2 n_modes");
  }
  n_modes_ = static_cast<int>(cov_.rows()) / 2;
  if (!mean_.allFinite() || !cov_.allFinite()) {
    throw std::domain_error("GaussianState: non-finite mean or covariance");
  }
  const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymmetryRelTol * scale) {
    throw std::domain_error("GaussianState: covariance not symmetric");
  }
  // Uncertainty bound nu_j >= 1/2. The eigen check carries its own roundoff
  // proportional to the covariance scale, so widen the slack accordingly.
  const double slack = std::max(kUncertaintySlack, 1e-13 * scale);
  for (double nu : symplectic_eigenvalues(cov_)) {
    if (nu < 0.5 - slack) {
      throw std::domain_error(
          "GaussianState: uncertainty principle violated (symplectic "
          "eigenvalue " +
          std::to_string(nu) + " < 1/2)");
    }
  }
}

GaussianState make_single_mode_state(double nu, double r, double phi,
                                     std::complex<double> alpha) {
  if (!(nu >= 0.0)) {
    throw std::domain_error("make_single_mode_state: nu must be >= 0");
  }
  if (!std::isfinite(nu) || !std::isfinite(r) || !std::isfinite(phi) ||
      !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw std::domain_error("make_single_mode_state: non-finite input");
  }
  // Squeezed thermal covariance (nu + 1/2) [cosh(2r) I + sinh(2r) R(phi)]
  // with R = [[cos phi, sin phi], [sin phi, -cos phi]].
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  const double w = nu + 0.5;
  Eigen::MatrixXd cov(2, 2);
  cov << w * (c + std::cos(phi) * s), w * std::sin(phi) * s,
      w * std::sin(phi) * s, w * (c - std::cos(phi) * s);
  Eigen::VectorXd mean(2);
  mean << std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag();
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState product_state(const std::vector<GaussianState>& states) {
  if (states.empty()) {
    throw std::domain_error("product_state: empty state list");
  }
  int total = 0;
  for (const auto& st : states) total += st.n_modes();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2 * total);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2 * total, 2 * total);
  int offset = 0;
  for (const auto& st : states) {
    const int d = 2 * st.n_modes();
    mean.segment(offset, d) = st.mean();
    cov.block(offset, offset, d, d) = st.cov();
    offset += d;
  }
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState reduce_mode(const GaussianState& state, int mode_index) {
  if (mode_index < 0 || mode_index >= state.n_modes()) {
    throw std::out_of_range("reduce_mode: mode index out of range");
  }
  const int off = 2 * mode_index;
  return GaussianState(state.mean().segment(off, 2),
                       state.cov().block(off, off, 2, 2));
}

double schrodinger_determinant(const GaussianState& state) {
  if (state.n_modes() != 1) {
    throw std::invalid_argument(
        "schrodinger_determinant: expects a single-mode state");
  }
  const auto& c = state.cov();
  return c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0);
}

}  // namespace covlyap
