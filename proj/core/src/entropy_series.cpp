#include "covlyap/entropy_series.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "covlyap/compound.hpp"
#include "covlyap/entropy.hpp"
#include "covlyap/propagation.hpp"

namespace covlyap {

namespace {

// Rank of the row pair (2r, 2r+1) of `reduced_mode` r within index_pairs(dim).
int mode_pair_rank(int dim, int mode) {
  const int i = 2 * mode;
  return i * dim - i * (i + 1) / 2 + (2 * mode + 1 - i - 1);
}

struct StepPlan {
  double h = 0.0;
  long total_steps = 0;
  long dense_stride = 1;
  long period_stride = 0;  // 0: no period sampling
  double t_end = 0.0;
};

// Fixed-step plan. For periodic sampling the step is shrunk to divide 2 pi
// exactly and the horizon is rounded up to a whole number of 2 pi intervals,
// so every t_n = 2 pi n lands on a step boundary.
StepPlan plan_steps(double t_max, double step, bool period_sampling,
                    int dense_samples) {
  StepPlan plan;
  if (period_sampling) {
    const double two_pi = 2.0 * std::numbers::pi;
    const long m = static_cast<long>(std::ceil(two_pi / step - 1e-12));
    const long blocks = std::max<long>(1, static_cast<long>(std::ceil(t_max / two_pi - 1e-9)));
    plan.h = two_pi / static_cast<double>(m);
    plan.period_stride = m;
    plan.total_steps = blocks * m;
    plan.t_end = blocks * two_pi;
  } else {
    const long n = std::max<long>(1, static_cast<long>(std::ceil(t_max / step - 1e-12)));
    plan.h = t_max / static_cast<double>(n);
    plan.total_steps = n;
    plan.t_end = t_max;
  }
  plan.dense_stride = std::max<long>(1, plan.total_steps / std::max(1, dense_samples));
  return plan;
}

}  // namespace

SeriesBundle determinant_series_bundle(const QuadraticModel& model,
                                       const GaussianState& initial,
                                       double t_max, double step,
                                       int reduced_mode,
                                       const SeriesOptions& opts) {
  if (!(t_max > 0.0)) throw std::domain_error("determinant_series: t_max <= 0");
  if (!(step > 0.0)) throw std::domain_error("determinant_series: step <= 0");
  if (initial.n_modes() != model.n_modes()) {
    throw std::invalid_argument(
        "determinant_series: state/model mode count mismatch");
  }
  if (reduced_mode < 0 || reduced_mode >= initial.n_modes()) {
    throw std::out_of_range("determinant_series: reduced_mode out of range");
  }

  const int dim = 2 * model.n_modes();
  const bool periodic = model.period().has_value();
  const StepPlan plan = plan_steps(t_max, step, periodic, opts.dense_samples);

  // Factor the initial covariance and propagate the 2x2 minors of
  // W(t) = Z(t) L0. By Cauchy-Binet the reduced determinant is the sum of
  // squared minors of W's mode rows, a cancellation-free expression that
  // stays accurate deep into the exponential-growth regime, where forming
  // Z cov Z^T and subtracting would lose every significant digit.
  Eigen::LLT<Eigen::MatrixXd> llt(initial.cov());
  if (llt.info() != Eigen::Success) {
    throw std::domain_error(
        "determinant_series: initial covariance not positive definite");
  }
  const Eigen::MatrixXd L0 = llt.matrixL();
  Eigen::MatrixXd C = wedge2(L0);
  Eigen::MatrixXd Z = Eigen::MatrixXd::Identity(dim, dim);

  const int pair_rank = mode_pair_rank(dim, reduced_mode);

  EntropySeries dense;
  dense.sampling = SamplingMode::Uniform;
  dense.reduced_mode = reduced_mode;
  EntropySeries period;
  period.sampling = SamplingMode::PeriodMultiples;
  period.reduced_mode = reduced_mode;

  double max_defect = 0.0;
  bool truncated = false;

  auto record = [&](long step_index) {
    const double t = step_index * plan.h;
    const double D = C.row(pair_rank).squaredNorm();
    const double S = entropy_from_determinant(D);
    const bool on_dense = step_index % plan.dense_stride == 0 ||
                          step_index == plan.total_steps;
    const bool on_period =
        plan.period_stride > 0 && step_index % plan.period_stride == 0;
    if (on_dense || on_period) {
      const SymplecticMatrix zt{Z, 0.0, t};
      max_defect = std::max(max_defect, zt.scaled_symplectic_defect());
    }
    if (on_dense) {
      dense.times.push_back(t);
      dense.det.push_back(D);
      dense.entropy.push_back(S);
    }
    if (on_period) {
      period.times.push_back(t);
      period.det.push_back(D);
      period.entropy.push_back(S);
    }
  };

  record(0);
  const int m = static_cast<int>(C.rows());
  Eigen::MatrixXd k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim);
  Eigen::MatrixXd c1(m, m), c2(m, m), c3(m, m), c4(m, m);
  for (long i = 0; i < plan.total_steps; ++i) {
    const double t = i * plan.h;
    const double h = plan.h;
    const Eigen::MatrixXd a0 = flow_generator(model, t);
    const Eigen::MatrixXd am = flow_generator(model, t + 0.5 * h);
    const Eigen::MatrixXd a1 = flow_generator(model, t + h);
    const Eigen::MatrixXd b0 = second_additive_compound(a0);
    const Eigen::MatrixXd bm = second_additive_compound(am);
    const Eigen::MatrixXd b1 = second_additive_compound(a1);

    k1.noalias() = a0 * Z;
    k2.noalias() = am * (Z + 0.5 * h * k1);
    k3.noalias() = am * (Z + 0.5 * h * k2);
    k4.noalias() = a1 * (Z + h * k3);
    Z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    c1.noalias() = b0 * C;
    c2.noalias() = bm * (C + 0.5 * h * c1);
    c3.noalias() = bm * (C + 0.5 * h * c2);
    c4.noalias() = b1 * (C + h * c3);
    C += (h / 6.0) * (c1 + 2.0 * c2 + 2.0 * c3 + c4);

    if (!(Z.cwiseAbs().maxCoeff() <= opts.max_norm) ||
        !(C.cwiseAbs().maxCoeff() <= opts.max_norm)) {
      truncated = true;  // keep everything recorded so far
      break;
    }
    record(i + 1);
  }

  dense.truncated = truncated;
  dense.max_scaled_symplectic_defect = max_defect;
  SeriesBundle bundle;
  bundle.dense = std::move(dense);
  if (periodic) {
    period.truncated = truncated;
    period.max_scaled_symplectic_defect = max_defect;
    bundle.period_samples = std::move(period);
  }
  return bundle;
}

EntropySeries determinant_series(const QuadraticModel& model,
                                 const GaussianState& initial, double t_max,
                                 double step, int reduced_mode,
                                 std::optional<SamplingMode> sampling,
                                 const SeriesOptions& opts) {
  const SamplingMode mode = sampling.value_or(model.period()
                                                  ? SamplingMode::PeriodMultiples
                                                  : SamplingMode::Uniform);
  if (mode == SamplingMode::PeriodMultiples && !model.period()) {
    throw std::domain_error(
        "determinant_series: period sampling on a time-independent model");
  }
  SeriesBundle bundle =
      determinant_series_bundle(model, initial, t_max, step, reduced_mode, opts);
  if (mode == SamplingMode::PeriodMultiples) return *std::move(bundle).period_samples;
  return std::move(bundle).dense;
}

}  // namespace covlyap
