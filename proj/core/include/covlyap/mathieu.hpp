#pragma once

#include <complex>

namespace covlyap {

/// Values of the Mathieu cosine/sine basis pair at one time:
/// C(a,q,0) = 1, C'(a,q,0) = 0, S(a,q,0) = 0, S'(a,q,0) = 1.
struct MathieuBasis {
  double c;
  double s;
  double c_dot;
  double s_dot;
};

/// Numerically integrated basis of x'' + (alpha - 2q cos 2t) x = 0.
/// The Wronskian c * s_dot - c_dot * s stays 1 to integration tolerance.
MathieuBasis mathieu_basis(double alpha, double q, double t, double step);

/// Characteristic exponent phi: the monodromy over one period pi has
/// eigenvalues e^{+-i phi pi}. Im(phi) >= 0 always; Im(phi) > 0 signals
/// instability. In the stable case the full (unaliased) real part is
/// recovered by tracking the winding of the complex Floquet eigensolution,
/// so that phi(alpha, 0) = sqrt(alpha) exactly; in the unstable case the
/// real part is 0 or 1 according to the sign of the monodromy trace.
std::complex<double> mathieu_characteristic_exponent(double alpha, double q,
                                                     double step);

/// Characteristic exponent plus a basis evaluator for fixed (alpha, q).
struct MathieuSolution {
  double alpha;
  double q;
  double step;
  std::complex<double> phi;

  MathieuBasis basis_at(double t) const {
    return mathieu_basis(alpha, q, t, step);
  }
};

MathieuSolution solve_mathieu(double alpha, double q, double step);

}  // namespace covlyap
