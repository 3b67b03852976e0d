#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "covlyap/entropy_series.hpp"
#include "covlyap/gaussian_state.hpp"
#include "covlyap/qbme.hpp"
#include "covlyap/quadratic_model.hpp"

namespace covlyap::cli {

// Exit codes: 2 config parse error, 3 precondition violation, 4 dynamics
// overflow / horizon exhaustion before the asymptotic regime.
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitNotAsymptotic = 4;

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind {
  Qbme,
  Ihe,
  CoupledParametric,
  SingleParametric,
  CustomPeriodic,
};

std::string to_string(ScenarioKind kind);

struct InitialModeSpec {
  double nu = 0.0;
  double r = 0.0;
  double phi = 0.0;
  double alpha_re = 0.0;
  double alpha_im = 0.0;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Qbme;
  nlohmann::json model;  // raw model block (validated), echoed into summaries

  std::vector<InitialModeSpec> initial_modes;  // defaults to vacuum per mode

  double step = 1e-3;
  double t_max = 10.0;
  double horizon_cap = 0.0;  // 0: compare_rate default (64 x t_max)
  double max_norm = 1e120;

  double tail_fraction = 0.5;
  std::optional<SamplingMode> sampling;
  int samples = 2000;
  int reduced_mode = 0;

  std::string series_csv = "series.csv";
  std::string summary_json = "summary.json";

  /// Hamiltonian model for non-QBME scenarios (throws for Qbme).
  QuadraticModel build_model() const;
  /// Bath + initial state parameters for the QBME scenario.
  QbmeParams build_qbme_params() const;
  /// Product state over the configured per-mode specs.
  GaussianState build_initial_state() const;

  int model_modes() const;
};

/// Strict-schema parse: unknown keys, wrong types and malformed structure
/// raise ConfigError naming the offending key.
ScenarioConfig parse_scenario_config(const nlohmann::json& j,
                                     bool allow_sweep_block = false);
ScenarioConfig load_scenario_config(const std::filesystem::path& path,
                                    bool allow_sweep_block = false);

struct ScenarioOutcome {
  int exit_code = 0;
  std::string status;          // "ok", "stable", or an error category
  nlohmann::json summary;      // what was written to summary.json
};

/// Executes the scenario and writes series.csv / summary.json under out_dir.
/// Precondition violations throw before any file is created; overflow or
/// horizon exhaustion keeps partial outputs and returns exit code 4.
ScenarioOutcome run_scenario(const ScenarioConfig& config,
                             const std::filesystem::path& out_dir);

}  // namespace covlyap::cli
