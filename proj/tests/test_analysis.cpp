#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "covlyap/entropy.hpp"
#include "covlyap/entropy_series.hpp"
#include "covlyap/errors.hpp"
#include "covlyap/floquet.hpp"
#include "covlyap/gaussian_state.hpp"
#include "covlyap/normal_modes.hpp"
#include "covlyap/propagation.hpp"
#include "covlyap/rate_fit.hpp"
#include "support/expm.hpp"

using namespace covlyap;

namespace {

const double kPi = std::numbers::pi;
const double kTwoPi = 2.0 * kPi;

GaussianState two_mode_vacuum() {
  const auto vac = make_single_mode_state(0, 0, 0, {0, 0});
  return product_state({vac, vac});
}

}  // namespace

TEST_CASE("uncoupled model generates no entanglement") {
  const auto model = QuadraticModel::ihe(1.0, 1.0, 0.0);
  const auto series =
      determinant_series(model, two_mode_vacuum(), 10.0, 1e-3, 1);
  REQUIRE(series.size() > 100);
  for (std::size_t i = 0; i < series.size(); ++i) {
    CHECK(std::abs(series.det[i] - 0.25) < 1e-10);
    CHECK(series.entropy[i] == 0.0);
  }
  CHECK_FALSE(series.truncated);
}

TEST_CASE("series matches direct matrix-exponential evolution") {
  const auto model = QuadraticModel::ihe(1.0, 1.0, 0.5);
  const auto series =
      determinant_series(model, two_mode_vacuum(), 8.0, 1e-3, 0);
  const Eigen::MatrixXd A = flow_generator(model, 0.0);
  for (std::size_t i = 0; i < series.size(); i += 101) {
    const double t = series.times[i];
    const Eigen::MatrixXd Z = covlyap::testing::expm<double>((A * t).eval());
    const Eigen::MatrixXd cov = 0.5 * Z * Z.transpose();
    const double d_direct = cov.topLeftCorner(2, 2).determinant();
    CHECK(series.det[i] == doctest::Approx(d_direct).epsilon(1e-6));
  }
}

TEST_CASE("IHE determinant grows log-linearly on the tail") {
  const auto model = QuadraticModel::ihe(1.0, 1.0, 0.5);
  const auto series =
      determinant_series(model, two_mode_vacuum(), 25.0, 1e-3, 0);
  const std::size_t n = series.size();
  // strictly increasing on the tail
  for (std::size_t i = n / 2; i + 1 < n; ++i) {
    CHECK(series.det[i + 1] > series.det[i]);
  }
  // ln D - 2 lambda t settles to a constant: variation < 1e-3 over the last
  // quarter of samples
  const double lam = constant_generator_spectrum(model).lyapunov_upper;
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 3 * n / 4; i < n; ++i) {
    const double v = std::log(series.det[i]) - 2.0 * lam * series.times[i];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi - lo < 1e-3);
}

TEST_CASE("determinant stays above the uncertainty floor") {
  const auto series = determinant_series(
      QuadraticModel::coupled_parametric(0.4, 0.8, 0.2, 0.15),
      two_mode_vacuum(), 40.0, 1e-3, 1, SamplingMode::Uniform);
  for (double d : series.det) CHECK(d >= 0.25 - 1e-9);
}

TEST_CASE("stable coupled model keeps the determinant bounded") {
  const auto model = QuadraticModel::coupled_parametric(2.0, 3.0, 0.1, 0.2);
  const auto series =
      determinant_series(model, two_mode_vacuum(), 30.0 * kTwoPi, 1e-3, 0,
                         SamplingMode::Uniform);
  CHECK_FALSE(series.truncated);
  double dmax = 0.0;
  for (double d : series.det) dmax = std::max(dmax, d);
  CHECK(dmax < 10.0);
}

TEST_CASE("reduced entropies of both modes agree for pure initial states") {
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    const auto s1 = make_single_mode_state(0.0, 0.8 * u(rng), kPi * u(rng),
                                           {u(rng), u(rng)});
    const auto s2 = make_single_mode_state(0.0, 0.8 * u(rng), kPi * u(rng),
                                           {u(rng), u(rng)});
    const auto initial = product_state({s1, s2});
    const auto model =
        trial % 2 == 0
            ? QuadraticModel::ihe(1.0, 1.0, 0.3 + 0.4 * std::abs(u(rng)))
            : QuadraticModel::coupled_parametric(0.4, 0.8, 0.2, 0.15);
    const auto a = determinant_series(model, initial, 6.0, 1e-3, 0,
                                      SamplingMode::Uniform);
    const auto b = determinant_series(model, initial, 6.0, 1e-3, 1,
                                      SamplingMode::Uniform);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a.entropy[i] - b.entropy[i]) < 1e-7);
    }
  }
}

TEST_CASE("mixed single-mode series has constant determinant") {
  // det of a full covariance is a symplectic invariant, so a lone parametric
  // mode never changes its entropy
  const auto mixed = make_single_mode_state(0.7, 0.3, 0.1, {0, 0});
  const auto series = determinant_series(
      QuadraticModel::single_parametric(1.0, 0.2), mixed, 10.0, 1e-3, 0,
      SamplingMode::Uniform);
  for (double d : series.det) {
    CHECK(d == doctest::Approx(1.44).epsilon(1e-9));  // (0.7 + 0.5)^2
  }
}

TEST_CASE("period sampling hits t_n = 2 pi n exactly") {
  const auto model = QuadraticModel::coupled_parametric(0.4, 0.8, 0.2, 0.15);
  const auto series =
      determinant_series(model, two_mode_vacuum(), 10.0 * kTwoPi, 1e-3, 0);
  CHECK(series.sampling == SamplingMode::PeriodMultiples);
  REQUIRE(series.size() == 11);
  for (std::size_t i = 0; i < series.size(); ++i) {
    CHECK(std::abs(series.times[i] - kTwoPi * static_cast<double>(i)) < 1e-9);
  }
  CHECK_THROWS_AS(determinant_series(QuadraticModel::ihe(1, 1, 0.5),
                                     two_mode_vacuum(), 10.0, 1e-3, 0,
                                     SamplingMode::PeriodMultiples),
                  std::domain_error);
}

TEST_CASE("series truncates on overflow and flags it") {
  SeriesOptions opts;
  opts.max_norm = 1e6;
  const auto model = QuadraticModel::ihe(1.0, 1.0, 0.5);
  const auto series = determinant_series(model, two_mode_vacuum(), 60.0, 1e-3,
                                         0, SamplingMode::Uniform, opts);
  CHECK(series.truncated);
  REQUIRE(series.size() > 10);
  CHECK(series.times.back() < 60.0);
}

TEST_CASE("synthetic fits recover slope and intercept") {
  EntropySeries synth;
  synth.sampling = SamplingMode::Uniform;
  for (int i = 0; i <= 100; ++i) {
    const double t = 0.2 * i;
    synth.times.push_back(t);
    synth.entropy.push_back(1.4 + 1.0 * t);
    synth.det.push_back(1e6);  // deep in the asymptotic regime
  }
  const auto fit = fit_asymptotic_rate(synth, 0.5);
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.4).epsilon(1e-10));
  CHECK(fit.residual_rms < 1e-12);

  // exact exponential determinant: D = C e^{2 lambda t}
  EntropySeries expo;
  expo.sampling = SamplingMode::Uniform;
  const double lam = 0.7, c20 = 0.35;
  for (int i = 0; i <= 200; ++i) {
    const double t = 20.0 + 0.1 * i;
    expo.times.push_back(t);
    expo.det.push_back(c20 * std::exp(2.0 * lam * t));
    expo.entropy.push_back(entropy_from_determinant(expo.det.back()));
  }
  const auto efit = fit_asymptotic_rate(expo, 1.0);
  CHECK(efit.slope == doctest::Approx(lam).epsilon(1e-10));
  // S ~ ln(D)/2 + 1 for large D, so the intercept is ln(c20)/2 + 1
  CHECK(efit.intercept ==
        doctest::Approx(0.5 * std::log(c20) + 1.0).epsilon(1e-6));
}

TEST_CASE("fit refuses a series that never reaches the asymptotic regime") {
  EntropySeries flat;
  flat.sampling = SamplingMode::Uniform;
  for (int i = 0; i < 64; ++i) {
    flat.times.push_back(0.1 * i);
    flat.det.push_back(0.3);
    flat.entropy.push_back(entropy_from_determinant(0.3));
  }
  CHECK_THROWS_AS(fit_asymptotic_rate(flat, 0.5), NotAsymptoticError);
  CHECK_THROWS_AS(fit_asymptotic_rate(flat, 0.0), std::domain_error);
  CHECK_THROWS_AS(fit_asymptotic_rate(flat, 1.5), std::domain_error);
}

TEST_CASE("compare_rate on the coupled IHE") {
  const auto model = QuadraticModel::ihe(1.0, 1.0, 0.5);
  const auto report = compare_rate(model, two_mode_vacuum(), 25.0, 1e-3);
  CHECK_FALSE(report.stable);
  CHECK(report.lyapunov == doctest::Approx(std::pow(1.25, 0.25)).epsilon(1e-12));
  CHECK(report.relative_error < 0.02);
  CHECK(report.max_scaled_symplectic_defect < 1e-8);
}

TEST_CASE("compare_rate flags the stable regime") {
  const auto model = QuadraticModel::coupled_parametric(2.0, 3.0, 0.1, 0.2);
  const auto report = compare_rate(model, two_mode_vacuum(), 20.0 * kTwoPi, 1e-3);
  CHECK(report.stable);
  CHECK(report.lyapunov == 0.0);
  CHECK(std::abs(report.fitted_slope) < 1e-3);
  CHECK(report.relative_error == 0.0);
}

TEST_CASE("compare_rate extends the horizon until the tail gate is met") {
  const auto model = QuadraticModel::coupled_parametric(0.4, 0.8, 0.2, 0.15);
  // deliberately short initial horizon; needs several doublings
  const auto report = compare_rate(model, two_mode_vacuum(), 6.0 * kTwoPi, 1e-3);
  CHECK(report.t_max_used > 6.0 * kTwoPi);
  CHECK(report.relative_error < 0.05);
  const double lam = coupled_lyapunov(model, 1e-3);
  CHECK(report.lyapunov == doctest::Approx(lam).epsilon(1e-6));
}

TEST_CASE("compare_rate reports a hard horizon cap") {
  const auto model = QuadraticModel::coupled_parametric(0.4, 0.8, 0.2, 0.15);
  CompareOptions opts;
  opts.horizon_cap = 4.0 * kTwoPi;  // far too short for the tail gate
  CHECK_THROWS_AS(
      compare_rate(model, two_mode_vacuum(), 2.0 * kTwoPi, 1e-3, opts),
      HorizonError);
}

TEST_CASE("compare_rate surfaces overflow before the asymptotic regime") {
  const auto model = QuadraticModel::ihe(1.0, 1.0, 0.5);
  CompareOptions opts;
  opts.series.max_norm = 1e2;  // overflows almost immediately
  try {
    compare_rate(model, two_mode_vacuum(), 25.0, 1e-3, opts);
    FAIL("expected HorizonError");
  } catch (const HorizonError& e) {
    CHECK(e.reason() == HorizonError::Reason::OverflowBeforeAsymptotic);
  }
}

TEST_CASE("slope is insensitive to step halving and window choice") {
  const auto model = QuadraticModel::ihe(1.0, 1.0, 0.5);
  const auto initial = two_mode_vacuum();
  const auto r1 = compare_rate(model, initial, 25.0, 1e-3);
  const auto r2 = compare_rate(model, initial, 25.0, 5e-4);
  CHECK(std::abs(r1.fitted_slope - r2.fitted_slope) <
        0.01 * std::abs(r1.fitted_slope));

  CompareOptions narrow;
  narrow.tail_fraction = 0.3;
  const auto r3 = compare_rate(model, initial, 25.0, 1e-3, narrow);
  CHECK(std::abs(r1.fitted_slope - r3.fitted_slope) <
        0.01 * std::abs(r1.fitted_slope));
}

TEST_CASE("log-linearity at period multiples") {
  const auto model = QuadraticModel::coupled_parametric(0.4, 0.8, 0.2, 0.15);
  const auto report = compare_rate(model, two_mode_vacuum(), 64.0 * kTwoPi, 1e-3);
  const double span =
      report.t_max_used * 0.5;  // fit window covers the trailing half
  CHECK(report.fit.residual_rms < 1e-2 * report.fitted_slope * span);
}
