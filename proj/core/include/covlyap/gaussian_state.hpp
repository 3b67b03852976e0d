#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace covlyap {

// Conventions used throughout the library:
//   * hbar = 1 and a = (x + i p) / sqrt(2), so the vacuum covariance is
//     diag(1/2, 1/2) per mode;
//   * phase-space ordering is (x1, p1, x2, p2, ...);
//   * covariances are the symmetrized central moments
//     sigma_xy = <{x,y}>/2 - <x><y>.

/// Symplectic form J for n modes: block-diagonal [[0, 1], [-1, 0]] blocks.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Symplectic (Williamson) eigenvalues of a positive definite covariance
/// matrix, sorted ascending. Each is >= 1/2 for a physical state.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov);

/// A Gaussian state of n modes: mean vector plus covariance matrix.
/// Immutable after construction; construction validates symmetry, finiteness
/// and the uncertainty bound on the symplectic eigenvalues.
class GaussianState {
 public:
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  int n_modes() const { return n_modes_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

 private:
  int n_modes_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Single-mode displaced squeezed thermal state. `nu` is the thermal
/// occupation, (r, phi) the squeezing parameters and `alpha` the coherent
/// displacement. At phi = 0 the x quadrature is stretched:
/// sigma_xx = (nu + 1/2) e^{2r}, sigma_pp = (nu + 1/2) e^{-2r}.
GaussianState make_single_mode_state(double nu, double r, double phi,
                                     std::complex<double> alpha);

/// Tensor product: block-diagonal covariance, concatenated means.
GaussianState product_state(const std::vector<GaussianState>& states);

/// Partial trace down to one mode; for Gaussian states this is extraction of
/// the corresponding mean sub-vector and 2x2 covariance block.
GaussianState reduce_mode(const GaussianState& state, int mode_index);

/// Determinant of the 2x2 covariance matrix of a single-mode state,
/// D = sigma_pp sigma_qq - sigma_qp^2 >= 1/4.
double schrodinger_determinant(const GaussianState& state);

}  // namespace covlyap
