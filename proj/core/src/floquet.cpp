#include "covlyap/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covlyap {

namespace {

std::vector<std::complex<double>> sorted_descending_real(
    std::vector<std::complex<double>> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return v;
}

std::vector<std::complex<double>> real_matrix_eigenvalues(
    const Eigen::MatrixXd& M) {
  // Eigen's real EigenSolver runs a Schur decomposition internally, which is
  // the robust route for (possibly defective) monodromy matrices.
  Eigen::EigenSolver<Eigen::MatrixXd> solver(M, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("floquet: eigenvalue iteration failed to converge");
  }
  std::vector<std::complex<double>> eigs(M.rows());
  for (int i = 0; i < M.rows(); ++i) eigs[i] = solver.eigenvalues()(i);
  return eigs;
}

}  // namespace

FloquetSpectrum floquet_spectrum(const SymplecticMatrix& monodromy, double T) {
  if (!(T > 0.0)) throw std::domain_error("floquet_spectrum: T must be > 0");
  if (monodromy.Z.rows() != monodromy.Z.cols()) {
    throw std::invalid_argument("floquet_spectrum: matrix must be square");
  }
  FloquetSpectrum spec;
  spec.period_used = T;
  spec.monodromy_eigenvalues = real_matrix_eigenvalues(monodromy.Z);
  spec.exponents.reserve(spec.monodromy_eigenvalues.size());
  double max_re = 0.0;
  for (const auto& rho : spec.monodromy_eigenvalues) {
    const std::complex<double> mu = std::log(rho) / T;  // principal branch
    spec.exponents.push_back(mu);
    max_re = std::max(max_re, mu.real());
  }
  spec.exponents = sorted_descending_real(std::move(spec.exponents));
  spec.lyapunov_upper = std::max(0.0, max_re);
  return spec;
}

FloquetSpectrum constant_generator_spectrum(const QuadraticModel& model) {
  if (model.period()) {
    throw std::domain_error(
        "constant_generator_spectrum: model is periodic; use monodromy + "
        "floquet_spectrum");
  }
  FloquetSpectrum spec;
  spec.exponents =
      sorted_descending_real(real_matrix_eigenvalues(flow_generator(model, 0.0)));
  double max_re = 0.0;
  for (const auto& mu : spec.exponents) max_re = std::max(max_re, mu.real());
  spec.lyapunov_upper = std::max(0.0, max_re);
  return spec;
}

}  // namespace covlyap
