#pragma once

namespace covlyap {

/// von Neumann entropy of a thermal-equivalent state with occupation nu:
/// S = (nu + 1) ln(nu + 1) - nu ln(nu), continuous at nu = 0 with S = 0.
double entropy_from_nu(double nu);

/// Entropy as a function of the Schroedinger determinant D >= 1/4 of a
/// single-mode Gaussian state. With d = 2 sqrt(D),
///   S = (d+1)/2 ln(d+1) - (d-1)/2 ln(d-1) - ln 2,
/// which coincides with entropy_from_nu(sqrt(D) - 1/2).
/// Values of D in [1/4 - 1e-9, 1/4) are clamped to 1/4 (roundoff guard for
/// evolved pure states); smaller values are a domain error.
double entropy_from_determinant(double D);

}  // namespace covlyap
