#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace covlyap::cli {

struct SweepAxis {
  std::string path;  // dot path into the scenario config, e.g. "model.q"
  std::vector<double> values;
};

struct SweepConfig {
  nlohmann::json base;  // scenario config with the sweep block removed
  std::vector<SweepAxis> axes;  // one or two
  std::string output_csv = "sweep.csv";
  int workers = 0;  // 0: hardware concurrency
  bool fit = true;  // run rate fits for unstable two-mode points
};

SweepConfig parse_sweep_config(const nlohmann::json& j);
SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Runs every grid point (axis 0 outermost) and writes one CSV row per
/// point: parameters, lyapunov, fitted slope, relative error, status.
/// Per-point failures land in the status column; the sweep continues.
/// Rows are emitted in grid order regardless of the worker count.
int run_sweep(const SweepConfig& config, const std::filesystem::path& out_dir,
              int workers_override = 0);

}  // namespace covlyap::cli
