#include "covlyap/qbme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "covlyap/entropy.hpp"

namespace covlyap {

void QbmeParams::validate() const {
  if (!(omega > 0.0)) throw std::domain_error("qbme: omega must be > 0");
  if (!(k > 0.0)) throw std::domain_error("qbme: damping k must be > 0");
  if (!(n_bar >= 0.0)) throw std::domain_error("qbme: n_bar must be >= 0");
  if (!(nu0 >= 0.0)) throw std::domain_error("qbme: nu0 must be >= 0");
  if (!std::isfinite(r0) || !std::isfinite(phi0)) {
    throw std::domain_error("qbme: non-finite initial squeezing");
  }
}

QbmeSecondMoments qbme_second_moments(const QbmeParams& p, double t) {
  p.validate();
  if (!(t >= 0.0)) throw std::domain_error("qbme_second_moments: t < 0");
  const double decay = std::exp(-2.0 * p.k * t);
  const double w0 = p.nu0 + 0.5;
  const double sigma = w0 * std::cosh(2.0 * p.r0) * decay +
                       (p.n_bar + 0.5) * (1.0 - decay);
  const double sh = std::sinh(2.0 * p.r0);
  const double product = decay * decay * w0 * w0 * sh * sh;
  return {sigma, product};
}

double qbme_nu(const QbmeParams& p, double t) {
  const auto m = qbme_second_moments(p, t);
  const double val =
      std::sqrt(std::max(0.0, m.sigma_adag_a * m.sigma_adag_a - m.product_term)) -
      0.5;
  return std::max(0.0, val);
}

namespace {

// End of the transient after which |nu(t) - n_bar| is monotone. In the
// variable e = exp(-2kt), (nu + 1/2)^2 is the quadratic
//   (nbar + 1/2)^2 + 2 (nbar + 1/2) A e + (A^2 - B) e^2
// with A = (nu0+1/2) cosh(2 r0) - (nbar+1/2), B = (nu0+1/2)^2 sinh^2(2 r0);
// monotone past the vertex e_c = -(nbar+1/2) A / (A^2 - B) when it lies in
// (0, 1), otherwise from t = 0.
double transient_end(const QbmeParams& p) {
  const double w0 = p.nu0 + 0.5;
  const double wb = p.n_bar + 0.5;
  const double A = w0 * std::cosh(2.0 * p.r0) - wb;
  const double sh = std::sinh(2.0 * p.r0);
  const double quad = A * A - w0 * w0 * sh * sh;
  if (std::abs(quad) < 1e-300) return 0.0;
  const double e_c = -wb * A / quad;
  if (e_c <= 0.0 || e_c >= 1.0) return 0.0;
  return -std::log(e_c) / (2.0 * p.k);
}

}  // namespace

EntropySeries qbme_entropy_series(const QbmeParams& p,
                                  const std::vector<double>& grid) {
  p.validate();
  if (grid.empty()) throw std::domain_error("qbme_entropy_series: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0)) {
      throw std::domain_error("qbme_entropy_series: negative time in grid");
    }
    if (i > 0 && grid[i] < grid[i - 1]) {
      throw std::domain_error("qbme_entropy_series: grid not sorted");
    }
  }
  EntropySeries series;
  series.sampling = SamplingMode::Uniform;
  series.reduced_mode = 0;
  series.times = grid;
  series.det.reserve(grid.size());
  series.entropy.reserve(grid.size());
  for (double t : grid) {
    const double nu = qbme_nu(p, t);
    series.det.push_back((nu + 0.5) * (nu + 0.5));
    series.entropy.push_back(entropy_from_nu(nu));
  }
  // Saturation sanity check: |S - S_infinity| must not increase past the
  // transient.
  const double s_inf = entropy_from_nu(p.n_bar);
  const double t_mono = transient_end(p);
  const double slack = 1e-12 * (1.0 + std::abs(s_inf));
  double prev_gap = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < t_mono) continue;
    const double gap = std::abs(series.entropy[i] - s_inf);
    if (prev_gap >= 0.0 && gap > prev_gap + slack) {
      throw std::logic_error(
          "qbme_entropy_series: entropy gap grew past the transient");
    }
    prev_gap = gap;
  }
  return series;
}

}  // namespace covlyap
