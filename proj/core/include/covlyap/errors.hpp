#pragma once

#include <stdexcept>
#include <string>

namespace covlyap {

/// Thrown when a propagated fundamental matrix (or minor vector) exceeds the
/// configured norm bound. Carries the time at which integration was abandoned.
class DynamicsOverflowError : public std::runtime_error {
 public:
  DynamicsOverflowError(const std::string& what, double t_reached)
      : std::runtime_error(what), t_reached_(t_reached) {}

  double time_reached() const { return t_reached_; }

 private:
  double t_reached_;
};

/// Thrown by the rate fit when the series tail does not contain enough
/// samples deep in the exponential-growth regime.
class NotAsymptoticError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by compare_rate when the horizon cap is exhausted (or growth
/// overflows) before the asymptotic-regime gate is met.
class HorizonError : public std::runtime_error {
 public:
  enum class Reason { OverflowBeforeAsymptotic, HorizonCapReached };

  HorizonError(const std::string& what, Reason reason)
      : std::runtime_error(what), reason_(reason) {}

  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

}  // namespace covlyap
