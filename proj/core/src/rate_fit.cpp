#include "covlyap/rate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "covlyap/errors.hpp"
#include "covlyap/floquet.hpp"

namespace covlyap {

namespace {

constexpr double kAsymptoticDet = 100.0;  // sqrt(D) > 10 gate
constexpr int kMinAsymptoticSamples = 8;
constexpr double kStableLyapunov = 1e-8;

struct OlsResult {
  double slope, intercept, residual_rms;
};

// Ordinary least squares on (t_i, S_i), i in [begin, end). Times are
// centered before the normal equations for conditioning.
OlsResult ols(const EntropySeries& series, std::size_t begin, std::size_t end) {
  const std::size_t n = end - begin;
  if (n < 2) throw std::domain_error("rate fit: window has fewer than 2 samples");
  double t_mean = 0.0, s_mean = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    t_mean += series.times[i];
    s_mean += series.entropy[i];
  }
  t_mean /= static_cast<double>(n);
  s_mean /= static_cast<double>(n);
  double stt = 0.0, sts = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double dt = series.times[i] - t_mean;
    stt += dt * dt;
    sts += dt * (series.entropy[i] - s_mean);
  }
  if (stt == 0.0) throw std::domain_error("rate fit: degenerate time window");
  const double slope = sts / stt;
  const double intercept = s_mean - slope * t_mean;
  double rss = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double r = series.entropy[i] - (intercept + slope * series.times[i]);
    rss += r * r;
  }
  return {slope, intercept, std::sqrt(rss / static_cast<double>(n))};
}

std::size_t window_begin(const EntropySeries& series, double tail_fraction) {
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0) {
    throw std::domain_error("rate fit: tail_fraction must be in (0, 1]");
  }
  const std::size_t n = series.size();
  const auto w = static_cast<std::size_t>(
      std::ceil(tail_fraction * static_cast<double>(n)));
  return n - std::min(n, std::max<std::size_t>(w, 2));
}

}  // namespace

RateFit fit_asymptotic_rate(const EntropySeries& series, double tail_fraction) {
  if (series.size() < 2) {
    throw std::domain_error("fit_asymptotic_rate: series too short");
  }
  const std::size_t begin = window_begin(series, tail_fraction);
  const std::size_t end = series.size();
  int deep = 0;
  for (std::size_t i = begin; i < end; ++i) {
    if (series.det[i] > kAsymptoticDet) ++deep;
  }
  if (deep < kMinAsymptoticSamples) {
    throw NotAsymptoticError(
        "not in asymptotic regime: only " + std::to_string(deep) +
        " tail samples with sqrt(D) > 10; grow the run horizon");
  }
  const OlsResult r = ols(series, begin, end);
  return {r.slope, r.intercept, begin, end, r.residual_rms};
}

RateComparison compare_rate(const QuadraticModel& model,
                            const GaussianState& initial, double t_max,
                            double step, const CompareOptions& opts) {
  if (!(t_max > 0.0)) throw std::domain_error("compare_rate: t_max <= 0");
  const double cap = opts.horizon_cap > 0.0 ? opts.horizon_cap : 64.0 * t_max;

  FloquetSpectrum spectrum;
  if (model.period()) {
    spectrum = floquet_spectrum(monodromy(model, step), *model.period());
  } else {
    spectrum = constant_generator_spectrum(model);
  }
  const double lyapunov = spectrum.lyapunov_upper;

  RateComparison result;
  result.lyapunov = lyapunov;

  if (lyapunov < kStableLyapunov) {
    // Stable regime: D(t) stays bounded, so the asymptotic gate can never be
    // met. Report the raw tail slope (expected ~ 0) with a flag.
    const EntropySeries series = determinant_series(
        model, initial, t_max, step, opts.reduced_mode, {}, opts.series);
    const std::size_t begin = window_begin(series, opts.tail_fraction);
    const OlsResult r = ols(series, begin, series.size());
    result.stable = true;
    result.fitted_slope = r.slope;
    result.intercept = r.intercept;
    result.relative_error = 0.0;
    result.t_max_used = t_max;
    result.truncated = series.truncated;
    result.fit = {r.slope, r.intercept, begin, series.size(), r.residual_rms};
    result.max_scaled_symplectic_defect = series.max_scaled_symplectic_defect;
    return result;
  }

  double horizon = t_max;
  for (;;) {
    const EntropySeries series = determinant_series(
        model, initial, horizon, step, opts.reduced_mode, {}, opts.series);
    try {
      const RateFit fit = fit_asymptotic_rate(series, opts.tail_fraction);
      result.fit = fit;
      result.fitted_slope = fit.slope;
      result.intercept = fit.intercept;
      result.relative_error = std::abs(fit.slope - lyapunov) / lyapunov;
      result.t_max_used = horizon;
      result.truncated = series.truncated;
      result.max_scaled_symplectic_defect = series.max_scaled_symplectic_defect;
      return result;
    } catch (const NotAsymptoticError&) {
      if (series.truncated) {
        throw HorizonError(
            "dynamics overflow at t = " +
                std::to_string(series.times.empty() ? 0.0 : series.times.back()) +
                " before the asymptotic regime was reached",
            HorizonError::Reason::OverflowBeforeAsymptotic);
      }
      if (horizon >= cap) {
        throw HorizonError(
            "horizon cap " + std::to_string(cap) +
                " reached without entering the asymptotic regime",
            HorizonError::Reason::HorizonCapReached);
      }
      horizon = std::min(2.0 * horizon, cap);
    }
  }
}

}  // namespace covlyap
