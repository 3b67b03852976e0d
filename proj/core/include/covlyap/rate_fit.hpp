#pragma once

#include <cstddef>

#include "covlyap/entropy_series.hpp"
#include "covlyap/gaussian_state.hpp"
#include "covlyap/quadratic_model.hpp"

namespace covlyap {

/// Least-squares line through the tail of an entropy series. The slope
/// estimates the upper Lyapunov exponent, the intercept ln(C20)/2.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t window_begin = 0;  // [window_begin, window_end) sample indices
  std::size_t window_end = 0;
  double residual_rms = 0.0;
};

/// Fits S(t) on the trailing `tail_fraction` of the series. Requires at
/// least 8 window samples with sqrt(D) > 10 (where S ~ ln(D)/2 holds);
/// otherwise throws NotAsymptoticError.
RateFit fit_asymptotic_rate(const EntropySeries& series, double tail_fraction);

struct CompareOptions {
  double tail_fraction = 0.5;
  double horizon_cap = 0.0;  // 0: defaults to 64 * t_max
  int reduced_mode = 0;
  SeriesOptions series = {};
};

/// Fitted entropy growth rate versus the model's upper Lyapunov exponent.
struct RateComparison {
  double lyapunov = 0.0;
  double fitted_slope = 0.0;
  double intercept = 0.0;
  double relative_error = 0.0;  // |slope - lyapunov| / lyapunov; 0 if stable
  bool stable = false;
  double t_max_used = 0.0;
  bool truncated = false;
  RateFit fit = {};
  double max_scaled_symplectic_defect = 0.0;
};

/// Runs the model from `initial`, fits the asymptotic entropy rate and
/// reports it against lyapunov_upper. In the stable regime (lyapunov == 0)
/// a flagged report with the raw tail slope is returned instead. For
/// unstable models the horizon doubles from t_max up to the cap until the
/// fit's tail criterion is met; hitting the cap or the overflow bound first
/// raises HorizonError.
RateComparison compare_rate(const QuadraticModel& model,
                            const GaussianState& initial, double t_max,
                            double step, const CompareOptions& opts = {});

}  // namespace covlyap
