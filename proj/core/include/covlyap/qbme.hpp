#pragma once

#include <vector>

#include "covlyap/entropy_series.hpp"

namespace covlyap {

/// Damped-oscillator bath parameters (Born-Markov Liouvillian) together with
/// the squeezed-thermal initial state. The frequency omega enters only the
/// rotating phases of sigma_aa and cancels in every exposed quantity.
struct QbmeParams {
  double omega = 1.0;  // oscillator frequency, > 0
  double k = 0.0;      // damping rate, > 0
  double n_bar = 0.0;  // bath thermal occupation, >= 0
  double nu0 = 0.0;    // initial thermal occupation, >= 0
  double r0 = 0.0;     // initial squeezing
  double phi0 = 0.0;   // initial squeezing phase (does not affect nu(t))

  void validate() const;
};

struct QbmeSecondMoments {
  double sigma_adag_a;  // (nu0+1/2) cosh(2 r0) e^{-2kt} + (nbar+1/2)(1 - e^{-2kt})
  double product_term;  // sigma_a+a+ sigma_aa = e^{-4kt} (nu0+1/2)^2 sinh^2(2 r0)
};

QbmeSecondMoments qbme_second_moments(const QbmeParams& p, double t);

/// Effective thermal occupation
/// nu(t) = sqrt(sigma_adag_a^2 - product_term) - 1/2, clamped at 0.
double qbme_nu(const QbmeParams& p, double t);

/// Entropy series S(t_i) = entropy_from_nu(nu(t_i)) on a sorted grid.
/// |S(t) - S(n_bar)| is checked to be non-increasing past the transient.
EntropySeries qbme_entropy_series(const QbmeParams& p,
                                  const std::vector<double>& grid);

}  // namespace covlyap
