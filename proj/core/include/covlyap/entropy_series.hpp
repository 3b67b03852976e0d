#pragma once

#include <optional>
#include <vector>

#include "covlyap/gaussian_state.hpp"
#include "covlyap/quadratic_model.hpp"

namespace covlyap {

enum class SamplingMode {
  Uniform,          // evenly spaced samples on [0, t_max]
  PeriodMultiples,  // samples at t_n = 2 pi n
};

/// Sampled time series of the reduced-mode Schroedinger determinant and the
/// corresponding entropy.
struct EntropySeries {
  std::vector<double> times;
  std::vector<double> det;
  std::vector<double> entropy;
  SamplingMode sampling = SamplingMode::Uniform;
  int reduced_mode = 0;

  // Diagnostics filled by the generators.
  bool truncated = false;                   // stopped early on overflow
  double max_scaled_symplectic_defect = 0;  // over all recorded samples

  std::size_t size() const { return times.size(); }
};

struct SeriesOptions {
  double max_norm = 1e120;  // overflow bound for the propagated factors
  int dense_samples = 2000; // target sample count for Uniform sampling
};

/// Both sampling views of one integration pass: the dense diagnostic grid
/// and, for periodic models, the t_n = 2 pi n samples.
struct SeriesBundle {
  EntropySeries dense;
  std::optional<EntropySeries> period_samples;
};

SeriesBundle determinant_series_bundle(const QuadraticModel& model,
                                       const GaussianState& initial,
                                       double t_max, double step,
                                       int reduced_mode,
                                       const SeriesOptions& opts = {});

/// Determinant/entropy series of one reduced mode of a two-mode state under
/// the model flow. On overflow the series is truncated at the last valid
/// sample and flagged. Periodic models default to PeriodMultiples sampling,
/// time-independent ones to Uniform.
EntropySeries determinant_series(const QuadraticModel& model,
                                 const GaussianState& initial, double t_max,
                                 double step, int reduced_mode,
                                 std::optional<SamplingMode> sampling = {},
                                 const SeriesOptions& opts = {});

}  // namespace covlyap
