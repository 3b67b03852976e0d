#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "covlyap/propagation.hpp"
#include "covlyap/quadratic_model.hpp"

namespace covlyap {

/// Floquet exponents of a periodic flow (or eigenvalues of a constant
/// generator) together with the derived upper quantum Lyapunov exponent.
struct FloquetSpectrum {
  /// Exponents mu_j, sign-paired {mu, -mu} up to 2 pi i / T aliasing.
  /// Sorted by descending real part.
  std::vector<std::complex<double>> exponents;

  /// Eigenvalues of the monodromy matrix; empty for constant generators.
  std::vector<std::complex<double>> monodromy_eigenvalues;

  /// max_j Re(mu_j), floored at zero.
  double lyapunov_upper = 0.0;

  /// Period used to take logarithms; nullopt for constant generators.
  std::optional<double> period_used;
};

/// Exponents mu_j = ln(eig_j(M)) / T on the principal branch.
FloquetSpectrum floquet_spectrum(const SymplecticMatrix& monodromy, double T);

/// Spectrum of the constant generator A of a time-independent model (IHE or
/// a custom stiffness without period). For the IHE the eigenvalues are the
/// four roots of (s^2 + w1^2)(s^2 - Lambda^2) - lambda_c^2 = 0.
FloquetSpectrum constant_generator_spectrum(const QuadraticModel& model);

}  // namespace covlyap
