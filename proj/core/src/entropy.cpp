#include "covlyap/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace covlyap {

namespace {

constexpr double kMinDeterminant = 0.25;
constexpr double kDeterminantSlack = 1e-9;
constexpr double kLn2 = 0.6931471805599453;

}  // namespace

double entropy_from_nu(double nu) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw std::domain_error("entropy_from_nu: nu must be finite and >= 0");
  }
  if (nu == 0.0) return 0.0;
  if (nu < 1e-300) return nu * (1.0 - std::log(nu));  // avoid 1/nu overflow
  // (nu+1) ln(nu+1) - nu ln(nu) = ln1p(nu) + nu ln1p(1/nu), cancellation-free
  // for every magnitude of nu.
  return std::log1p(nu) + nu * std::log1p(1.0 / nu);
}

double entropy_from_determinant(double D) {
  if (!std::isfinite(D) || D < kMinDeterminant - kDeterminantSlack) {
    throw std::domain_error("entropy_from_determinant: D = " +
                            std::to_string(D) + " below 1/4");
  }
  if (D < kMinDeterminant) D = kMinDeterminant;  // roundoff guard
  const double d = 2.0 * std::sqrt(D);
  if (d > 1e4) {
    // (d+1)ln(d+1) - (d-1)ln(d-1) = 2 ln d + 2 - 1/(3 d^2) - O(d^-4); the
    // direct difference loses all digits once d ln d dwarfs the result.
    const double inv = 1.0 / d;
    return std::log(d) + 1.0 - kLn2 - inv * inv / 6.0 - inv * inv * inv * inv / 20.0;
  }
  const double up = 0.5 * (d + 1.0) * std::log1p(d);  // ln(d+1)
  const double t = d - 1.0;
  const double down = t > 0.0 ? 0.5 * t * std::log(t) : 0.0;
  return up - down - kLn2;
}

}  // namespace covlyap
