#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "covlyap/entropy.hpp"
#include "covlyap/qbme.hpp"

using namespace covlyap;

namespace {

// Independent oracle: RK4 integration of the second-moment ODEs implied by
// the Born-Markov Liouvillian
//   L = -i w [a+a, .] + k(nbar+1)(2 a . a+ - a+a . - . a+a)
//               + k nbar (2 a+ . a - a a+ . - . a a+).
// Adjoint calculus on N = a+a and a^2 gives (using [N, a^2] = -2 a^2,
// a a+ = N + 1):
//   d<N>/dt  = -2k <N> + 2k nbar,
//   d<a>/dt  = -(i w + k) <a>,
//   d<a2>/dt = -(2 i w + 2k) <a2>,
// so for the central moments sigma_N = <N> + 1/2 - |<a>|^2 and
// sigma_aa = <a2> - <a>^2:
//   d sigma_N / dt  = -2k sigma_N + 2k (nbar + 1/2),
//   d sigma_aa / dt = -(2 i w + 2k) sigma_aa.
// Squeezed-thermal initial values: sigma_N(0) = (nu0+1/2) cosh 2r0,
// sigma_aa(0) = e^{i phi0} (nu0+1/2) sinh 2r0.
struct MomentState {
  double sigma_n, re_aa, im_aa;
};

MomentState qbme_ode_oracle(const QbmeParams& p, double t_end, double h = 1e-4) {
  MomentState y{(p.nu0 + 0.5) * std::cosh(2.0 * p.r0),
                std::cos(p.phi0) * (p.nu0 + 0.5) * std::sinh(2.0 * p.r0),
                std::sin(p.phi0) * (p.nu0 + 0.5) * std::sinh(2.0 * p.r0)};
  auto rhs = [&p](const MomentState& s) {
    return MomentState{-2.0 * p.k * s.sigma_n + 2.0 * p.k * (p.n_bar + 0.5),
                       -2.0 * p.k * s.re_aa + 2.0 * p.omega * s.im_aa,
                       -2.0 * p.k * s.im_aa - 2.0 * p.omega * s.re_aa};
  };
  auto axpy = [](const MomentState& a, double c, const MomentState& b) {
    return MomentState{a.sigma_n + c * b.sigma_n, a.re_aa + c * b.re_aa,
                       a.im_aa + c * b.im_aa};
  };
  const int n = std::max(1, static_cast<int>(std::ceil(t_end / h)));
  const double dt = t_end / n;
  for (int i = 0; i < n; ++i) {
    const MomentState k1 = rhs(y);
    const MomentState k2 = rhs(axpy(y, dt / 2, k1));
    const MomentState k3 = rhs(axpy(y, dt / 2, k2));
    const MomentState k4 = rhs(axpy(y, dt, k3));
    y = axpy(y, dt / 6,
             MomentState{k1.sigma_n + 2 * k2.sigma_n + 2 * k3.sigma_n + k4.sigma_n,
                         k1.re_aa + 2 * k2.re_aa + 2 * k3.re_aa + k4.re_aa,
                         k1.im_aa + 2 * k2.im_aa + 2 * k3.im_aa + k4.im_aa});
  }
  return y;
}

double oracle_nu(const QbmeParams& p, double t) {
  const MomentState s = qbme_ode_oracle(p, t);
  const double prod = s.re_aa * s.re_aa + s.im_aa * s.im_aa;
  return std::sqrt(s.sigma_n * s.sigma_n - prod) - 0.5;
}

const QbmeParams kFig1{1.0, 0.5, 10.0, 1.0, 1.0, 0.0};

}  // namespace

TEST_CASE("closed-form moments at t = 0 and relaxation limit") {
  const auto m0 = qbme_second_moments(kFig1, 0.0);
  CHECK(m0.sigma_adag_a == doctest::Approx(1.5 * std::cosh(2.0)).epsilon(1e-15));
  CHECK(m0.product_term ==
        doctest::Approx(2.25 * std::sinh(2.0) * std::sinh(2.0)).epsilon(1e-15));

  const auto minf = qbme_second_moments(kFig1, 1e4);
  CHECK(minf.sigma_adag_a == doctest::Approx(10.5).epsilon(1e-12));
  CHECK(minf.product_term == doctest::Approx(0.0));

  CHECK(qbme_nu(kFig1, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(qbme_nu(kFig1, 1e4) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("closed forms against the Lindblad moment-ODE oracle") {
  CHECK(qbme_nu(kFig1, 2.0) == doctest::Approx(9.3151403289024817).epsilon(1e-13));
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    CAPTURE(t);
    CHECK(std::abs(qbme_nu(kFig1, t) - oracle_nu(kFig1, t)) < 1e-8);
  }
  // a second, squeeze-dominated parameter point
  const QbmeParams p2{2.0, 0.8, 0.3, 0.0, 1.2, 0.9};
  for (double t : {0.2, 1.0, 4.0}) {
    CAPTURE(t);
    CHECK(std::abs(qbme_nu(p2, t) - oracle_nu(p2, t)) < 1e-8);
  }
}

TEST_CASE("entropy series endpoints and saturation") {
  std::vector<double> grid;
  for (int i = 0; i <= 400; ++i) grid.push_back(i * 10.0 / 400.0);
  const auto series = qbme_entropy_series(kFig1, grid);
  REQUIRE(series.size() == grid.size());
  CHECK(series.entropy.front() ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(std::abs(series.entropy.back() - entropy_from_nu(10.0)) < 1e-3);
  // entropy column is consistent with the determinant column
  for (std::size_t i = 0; i < series.size(); i += 37) {
    CHECK(series.entropy[i] ==
          doctest::Approx(entropy_from_determinant(series.det[i])).epsilon(1e-12));
  }
}

TEST_CASE("stationary thermal state stays put") {
  const QbmeParams p{1.0, 0.7, 3.0, 3.0, 0.0, 0.0};
  for (double t : {0.0, 0.3, 2.0, 40.0}) {
    CHECK(qbme_nu(p, t) == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("series does not depend on omega") {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i * 0.1);
  QbmeParams p = kFig1;
  p.omega = 0.5;
  const auto s1 = qbme_entropy_series(p, grid);
  p.omega = 1.0;
  const auto s2 = qbme_entropy_series(p, grid);
  p.omega = 2.0;
  const auto s3 = qbme_entropy_series(p, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(s1.entropy[i] == s2.entropy[i]);
    CHECK(s2.entropy[i] == s3.entropy[i]);
  }
}

TEST_CASE("nu(t) is nonnegative for random parameter draws") {
  std::mt19937 rng(987);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const QbmeParams p{0.2 + 3.0 * u(rng), 0.05 + 2.0 * u(rng), 20.0 * u(rng),
                       5.0 * u(rng), -2.0 + 4.0 * u(rng), 6.28 * u(rng)};
    for (double t : {0.0, 0.1, 0.7, 3.0, 15.0}) {
      CHECK(qbme_nu(p, t) >= 0.0);
    }
  }
}

TEST_CASE("exponential saturation bound") {
  // |nu(t) - nbar| <= C e^{-2kt} for t >= 1/k with C from initial data
  const QbmeParams p = kFig1;
  const double C = (p.nu0 + 0.5) * std::cosh(2.0 * p.r0) + p.n_bar + 1.0;
  for (double t = 1.0 / p.k; t < 20.0; t += 0.7) {
    CHECK(std::abs(qbme_nu(p, t) - p.n_bar) <=
          C * std::exp(-2.0 * p.k * t) + 1e-12);
  }
}

TEST_CASE("qbme rejects invalid input") {
  CHECK_THROWS_AS(qbme_second_moments(kFig1, -0.5), std::domain_error);
  QbmeParams bad = kFig1;
  bad.k = -1.0;
  CHECK_THROWS_AS(qbme_nu(bad, 1.0), std::domain_error);
  bad = kFig1;
  bad.n_bar = -0.2;
  CHECK_THROWS_AS(qbme_nu(bad, 1.0), std::domain_error);
  CHECK_THROWS_AS(qbme_entropy_series(kFig1, {}), std::domain_error);
  CHECK_THROWS_AS(qbme_entropy_series(kFig1, {1.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(qbme_entropy_series(kFig1, {-1.0, 0.5}), std::domain_error);
}
