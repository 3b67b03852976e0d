#include "scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "covlyap/entropy.hpp"
#include "covlyap/errors.hpp"
#include "covlyap/floquet.hpp"
#include "covlyap/propagation.hpp"
#include "covlyap/rate_fit.hpp"

namespace covlyap::cli {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& context) {
  if (!j.is_object()) {
    throw ConfigError("config section '" + context + "' must be an object");
  }
  for (const auto& item : j.items()) {
    if (!allowed.contains(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + context);
    }
  }
}

double get_number(const json& j, const std::string& key,
                  const std::string& context) {
  if (!j.contains(key)) {
    throw ConfigError("missing key '" + key + "' in " + context);
  }
  if (!j.at(key).is_number()) {
    throw ConfigError("key '" + key + "' in " + context + " must be a number");
  }
  return j.at(key).get<double>();
}

double get_number_or(const json& j, const std::string& key, double fallback,
                     const std::string& context) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    throw ConfigError("key '" + key + "' in " + context + " must be a number");
  }
  return j.at(key).get<double>();
}

Eigen::MatrixXd get_matrix(const json& j, const std::string& key,
                           const std::string& context) {
  const json& m = j.at(key);
  if (!m.is_array() || m.empty()) {
    throw ConfigError("key '" + key + "' in " + context +
                      " must be a non-empty array of rows");
  }
  const std::size_t rows = m.size();
  Eigen::MatrixXd out(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!m[i].is_array() || m[i].size() != rows) {
      throw ConfigError("key '" + key + "' in " + context +
                        " must be a square matrix");
    }
    for (std::size_t k = 0; k < rows; ++k) {
      if (!m[i][k].is_number()) {
        throw ConfigError("matrix '" + key + "' in " + context +
                          " has a non-numeric entry");
      }
      out(i, k) = m[i][k].get<double>();
    }
  }
  return out;
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_series_csv(const std::filesystem::path& path,
                      const EntropySeries& series) {
  std::ofstream out(path, std::ios::binary);  // binary: LF line endings
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "t,det,entropy\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_g17(series.times[i]) << ',' << format_g17(series.det[i])
        << ',' << format_g17(series.entropy[i]) << '\n';
  }
}

void write_summary(const std::filesystem::path& path, const json& summary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << summary.dump(2) << '\n';
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Qbme: return "qbme";
    case ScenarioKind::Ihe: return "ihe";
    case ScenarioKind::CoupledParametric: return "coupled_parametric";
    case ScenarioKind::SingleParametric: return "single_parametric";
    case ScenarioKind::CustomPeriodic: return "custom_periodic";
  }
  return "?";
}

int ScenarioConfig::model_modes() const {
  switch (kind) {
    case ScenarioKind::Qbme: return 1;
    case ScenarioKind::SingleParametric: return 1;
    case ScenarioKind::Ihe: return 2;
    case ScenarioKind::CoupledParametric: return 2;
    case ScenarioKind::CustomPeriodic:
      return static_cast<int>(model.at("k_const").size());
  }
  return 0;
}

QuadraticModel ScenarioConfig::build_model() const {
  switch (kind) {
    case ScenarioKind::Ihe:
      return QuadraticModel::ihe(model.at("omega1_sq").get<double>(),
                                 model.at("lambda_sq").get<double>(),
                                 model.at("coupling").get<double>());
    case ScenarioKind::CoupledParametric:
      return QuadraticModel::coupled_parametric(
          model.at("omega1_sq").get<double>(),
          model.at("omega2_sq").get<double>(), model.at("q").get<double>(),
          model.at("g").get<double>());
    case ScenarioKind::SingleParametric:
      return QuadraticModel::single_parametric(model.at("alpha").get<double>(),
                                               model.at("q").get<double>());
    case ScenarioKind::CustomPeriodic: {
      const Eigen::MatrixXd k_const = get_matrix(model, "k_const", "model");
      const int n = static_cast<int>(k_const.rows());
      std::optional<double> period;
      Eigen::MatrixXd k_cos = Eigen::MatrixXd::Zero(n, n);
      if (model.contains("period") && !model.at("period").is_null()) {
        period = model.at("period").get<double>();
      }
      if (model.contains("k_cos")) {
        k_cos = get_matrix(model, "k_cos", "model");
        if (k_cos.rows() != n) {
          throw ConfigError("model.k_cos must match k_const dimensions");
        }
        if (!period && k_cos.cwiseAbs().maxCoeff() > 0.0) {
          throw ConfigError("model.k_cos requires a period");
        }
      }
      const double omega_drive = period ? 2.0 * std::numbers::pi / *period : 0.0;
      auto stiffness = [k_const, k_cos, omega_drive](double t) {
        return Eigen::MatrixXd(k_const + k_cos * std::cos(omega_drive * t));
      };
      return QuadraticModel::custom_periodic(stiffness, n, period);
    }
    case ScenarioKind::Qbme:
      break;
  }
  throw std::logic_error("build_model: QBME scenario has no Hamiltonian model");
}

QbmeParams ScenarioConfig::build_qbme_params() const {
  QbmeParams p;
  p.omega = model.at("omega").get<double>();
  p.k = model.at("k").get<double>();
  p.n_bar = model.at("n_bar").get<double>();
  const InitialModeSpec& m0 = initial_modes.at(0);
  p.nu0 = m0.nu;
  p.r0 = m0.r;
  p.phi0 = m0.phi;
  // the displacement alpha does not enter nu(t) and is ignored
  p.validate();
  return p;
}

GaussianState ScenarioConfig::build_initial_state() const {
  std::vector<GaussianState> modes;
  modes.reserve(initial_modes.size());
  for (const auto& m : initial_modes) {
    modes.push_back(
        make_single_mode_state(m.nu, m.r, m.phi, {m.alpha_re, m.alpha_im}));
  }
  return product_state(modes);
}

ScenarioConfig parse_scenario_config(const json& j, bool allow_sweep_block) {
  std::set<std::string> top = {"scenario",    "model",  "initial_state",
                               "integration", "analysis", "output"};
  if (allow_sweep_block) top.insert("sweep");
  check_keys(j, top, "top level");
  if (!allow_sweep_block && j.contains("sweep")) {
    throw ConfigError("config contains a 'sweep' block; use the sweep command");
  }

  ScenarioConfig cfg;
  if (!j.contains("scenario") || !j.at("scenario").is_string()) {
    throw ConfigError("missing or non-string 'scenario' kind");
  }
  const std::string kind = j.at("scenario").get<std::string>();
  if (kind == "qbme") cfg.kind = ScenarioKind::Qbme;
  else if (kind == "ihe") cfg.kind = ScenarioKind::Ihe;
  else if (kind == "coupled_parametric") cfg.kind = ScenarioKind::CoupledParametric;
  else if (kind == "single_parametric") cfg.kind = ScenarioKind::SingleParametric;
  else if (kind == "custom_periodic") cfg.kind = ScenarioKind::CustomPeriodic;
  else throw ConfigError("unknown scenario kind '" + kind + "'");

  if (!j.contains("model")) throw ConfigError("missing 'model' section");
  cfg.model = j.at("model");
  switch (cfg.kind) {
    case ScenarioKind::Qbme:
      check_keys(cfg.model, {"omega", "k", "n_bar"}, "model");
      get_number(cfg.model, "omega", "model");
      get_number(cfg.model, "k", "model");
      get_number(cfg.model, "n_bar", "model");
      break;
    case ScenarioKind::Ihe:
      check_keys(cfg.model, {"omega1_sq", "lambda_sq", "coupling"}, "model");
      get_number(cfg.model, "omega1_sq", "model");
      get_number(cfg.model, "lambda_sq", "model");
      get_number(cfg.model, "coupling", "model");
      break;
    case ScenarioKind::CoupledParametric:
      check_keys(cfg.model, {"omega1_sq", "omega2_sq", "q", "g"}, "model");
      get_number(cfg.model, "omega1_sq", "model");
      get_number(cfg.model, "omega2_sq", "model");
      get_number(cfg.model, "q", "model");
      get_number(cfg.model, "g", "model");
      break;
    case ScenarioKind::SingleParametric:
      check_keys(cfg.model, {"alpha", "q"}, "model");
      get_number(cfg.model, "alpha", "model");
      get_number(cfg.model, "q", "model");
      break;
    case ScenarioKind::CustomPeriodic:
      check_keys(cfg.model, {"k_const", "k_cos", "period"}, "model");
      if (!cfg.model.contains("k_const")) {
        throw ConfigError("missing key 'k_const' in model");
      }
      break;
  }

  const int n_modes = cfg.model_modes();
  cfg.initial_modes.assign(n_modes, InitialModeSpec{});
  if (j.contains("initial_state")) {
    const json& init = j.at("initial_state");
    check_keys(init, {"modes"}, "initial_state");
    if (!init.contains("modes") || !init.at("modes").is_array()) {
      throw ConfigError("initial_state.modes must be an array");
    }
    const json& modes = init.at("modes");
    if (static_cast<int>(modes.size()) != n_modes) {
      throw ConfigError("initial_state.modes must list exactly " +
                        std::to_string(n_modes) + " mode(s)");
    }
    for (int i = 0; i < n_modes; ++i) {
      const json& m = modes[i];
      const std::string ctx = "initial_state.modes[" + std::to_string(i) + "]";
      check_keys(m, {"nu", "r", "phi", "alpha_re", "alpha_im"}, ctx);
      InitialModeSpec spec;
      spec.nu = get_number_or(m, "nu", 0.0, ctx);
      spec.r = get_number_or(m, "r", 0.0, ctx);
      spec.phi = get_number_or(m, "phi", 0.0, ctx);
      spec.alpha_re = get_number_or(m, "alpha_re", 0.0, ctx);
      spec.alpha_im = get_number_or(m, "alpha_im", 0.0, ctx);
      cfg.initial_modes[i] = spec;
    }
  }

  if (j.contains("integration")) {
    const json& integ = j.at("integration");
    check_keys(integ, {"step", "t_max", "horizon_cap", "max_norm"},
               "integration");
    cfg.step = get_number_or(integ, "step", cfg.step, "integration");
    cfg.t_max = get_number_or(integ, "t_max", cfg.t_max, "integration");
    cfg.horizon_cap =
        get_number_or(integ, "horizon_cap", cfg.horizon_cap, "integration");
    cfg.max_norm = get_number_or(integ, "max_norm", cfg.max_norm, "integration");
    if (!(cfg.step > 0.0)) throw ConfigError("integration.step must be > 0");
    if (!(cfg.t_max > 0.0)) throw ConfigError("integration.t_max must be > 0");
  }

  if (j.contains("analysis")) {
    const json& an = j.at("analysis");
    check_keys(an, {"tail_fraction", "sampling", "samples", "reduced_mode"},
               "analysis");
    cfg.tail_fraction =
        get_number_or(an, "tail_fraction", cfg.tail_fraction, "analysis");
    if (!(cfg.tail_fraction > 0.0) || cfg.tail_fraction > 1.0) {
      throw ConfigError("analysis.tail_fraction must be in (0, 1]");
    }
    if (an.contains("sampling")) {
      const std::string s = an.at("sampling").get<std::string>();
      if (s == "uniform") cfg.sampling = SamplingMode::Uniform;
      else if (s == "period_multiples") cfg.sampling = SamplingMode::PeriodMultiples;
      else throw ConfigError("analysis.sampling must be 'uniform' or 'period_multiples'");
    }
    cfg.samples = static_cast<int>(
        get_number_or(an, "samples", cfg.samples, "analysis"));
    if (cfg.samples < 1) throw ConfigError("analysis.samples must be >= 1");
    cfg.reduced_mode = static_cast<int>(
        get_number_or(an, "reduced_mode", cfg.reduced_mode, "analysis"));
    if (cfg.reduced_mode < 0 || cfg.reduced_mode >= n_modes) {
      throw ConfigError("analysis.reduced_mode out of range");
    }
  }

  if (j.contains("output")) {
    const json& out = j.at("output");
    check_keys(out, {"series_csv", "summary_json"}, "output");
    if (out.contains("series_csv")) {
      cfg.series_csv = out.at("series_csv").get<std::string>();
    }
    if (out.contains("summary_json")) {
      cfg.summary_json = out.at("summary_json").get<std::string>();
    }
  }
  return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path,
                                    bool allow_sweep_block) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path.string() + ": " +
                      e.what());
  }
  try {
    return parse_scenario_config(j, allow_sweep_block);
  } catch (const json::exception& e) {
    throw ConfigError("config error in " + path.string() + ": " + e.what());
  }
}

namespace {

json base_summary(const ScenarioConfig& cfg) {
  json init = json::array();
  for (const auto& m : cfg.initial_modes) {
    init.push_back({{"nu", m.nu},
                    {"r", m.r},
                    {"phi", m.phi},
                    {"alpha_re", m.alpha_re},
                    {"alpha_im", m.alpha_im}});
  }
  return json{{"scenario", to_string(cfg.kind)},
              {"model", cfg.model},
              {"initial_state", {{"modes", init}}},
              {"integration",
               {{"step", cfg.step}, {"t_max", cfg.t_max}}},
              {"lyapunov", nullptr},
              {"stable", nullptr},
              {"fit", nullptr},
              {"diagnostics", json::object()},
              {"status", "ok"},
              {"error_category", nullptr}};
}

ScenarioOutcome run_qbme(const ScenarioConfig& cfg,
                         const std::filesystem::path& out_dir) {
  const QbmeParams params = cfg.build_qbme_params();  // validates (exit 3)
  std::vector<double> grid;
  grid.reserve(cfg.samples + 1);
  for (int i = 0; i <= cfg.samples; ++i) {
    grid.push_back(cfg.t_max * static_cast<double>(i) /
                   static_cast<double>(cfg.samples));
  }
  const EntropySeries series = qbme_entropy_series(params, grid);

  json summary = base_summary(cfg);
  summary["qbme"] = {
      {"entropy_initial", series.entropy.front()},
      {"entropy_final", series.entropy.back()},
      {"entropy_infinity", entropy_from_nu(params.n_bar)},
      {"saturation_gap",
       std::abs(series.entropy.back() - entropy_from_nu(params.n_bar))}};
  summary["diagnostics"] = {{"samples", series.size()}, {"truncated", false}};

  std::filesystem::create_directories(out_dir);
  write_series_csv(out_dir / cfg.series_csv, series);
  write_summary(out_dir / cfg.summary_json, summary);
  return {0, "ok", summary};
}

json fit_to_json(const RateComparison& report, double tail_fraction) {
  return json{{"slope", report.fitted_slope},
              {"intercept", report.intercept},
              {"relative_error", report.relative_error},
              {"residual_rms", report.fit.residual_rms},
              {"window", {report.fit.window_begin, report.fit.window_end}},
              {"tail_fraction", tail_fraction}};
}

ScenarioOutcome run_hamiltonian(const ScenarioConfig& cfg,
                                const std::filesystem::path& out_dir) {
  const QuadraticModel model = cfg.build_model();        // exit 3 on bad params
  const GaussianState initial = cfg.build_initial_state();
  if (initial.n_modes() != model.n_modes()) {
    throw std::domain_error("initial state mode count does not match model");
  }

  SeriesOptions series_opts;
  series_opts.max_norm = cfg.max_norm;
  series_opts.dense_samples = cfg.samples;

  json summary = base_summary(cfg);
  std::filesystem::create_directories(out_dir);

  if (model.n_modes() == 1) {
    // No bipartite reduction: the determinant is a symplectic invariant, so
    // the series is flat. Report the Floquet/generator spectrum only.
    const SeriesBundle bundle = determinant_series_bundle(
        model, initial, cfg.t_max, cfg.step, cfg.reduced_mode, series_opts);
    const FloquetSpectrum spec =
        model.period()
            ? floquet_spectrum(monodromy(model, cfg.step), *model.period())
            : constant_generator_spectrum(model);
    summary["lyapunov"] = spec.lyapunov_upper;
    summary["stable"] = spec.lyapunov_upper < 1e-8;
    summary["note"] =
        "single-mode scenario: no bipartite entropy rate to fit";
    summary["diagnostics"] = {
        {"symplectic_defect_max", bundle.dense.max_scaled_symplectic_defect},
        {"truncated", bundle.dense.truncated},
        {"samples", bundle.dense.size()}};
    write_series_csv(out_dir / cfg.series_csv, bundle.dense);
    write_summary(out_dir / cfg.summary_json, summary);
    return {0, "ok", summary};
  }

  CompareOptions opts;
  opts.tail_fraction = cfg.tail_fraction;
  opts.horizon_cap = cfg.horizon_cap;
  opts.reduced_mode = cfg.reduced_mode;
  opts.series = series_opts;

  try {
    const RateComparison report =
        compare_rate(model, initial, cfg.t_max, cfg.step, opts);
    // regenerate the dense view over the horizon the fit actually used
    const SeriesBundle bundle =
        determinant_series_bundle(model, initial, report.t_max_used, cfg.step,
                                  cfg.reduced_mode, series_opts);
    const EntropySeries& csv_series =
        cfg.sampling == SamplingMode::PeriodMultiples && bundle.period_samples
            ? *bundle.period_samples
            : bundle.dense;

    summary["lyapunov"] = report.lyapunov;
    summary["stable"] = report.stable;
    summary["integration"]["t_max_used"] = report.t_max_used;
    if (report.stable) {
      summary["status"] = "stable";
      summary["fit"] = fit_to_json(report, cfg.tail_fraction);
    } else {
      summary["fit"] = fit_to_json(report, cfg.tail_fraction);
    }
    summary["diagnostics"] = {
        {"symplectic_defect_max", report.max_scaled_symplectic_defect},
        {"truncated", report.truncated},
        {"samples", csv_series.size()}};
    write_series_csv(out_dir / cfg.series_csv, csv_series);
    write_summary(out_dir / cfg.summary_json, summary);
    return {0, summary["status"].get<std::string>(), summary};
  } catch (const HorizonError& e) {
    // keep partial outputs and flag the failure
    const double horizon =
        cfg.horizon_cap > 0.0 ? cfg.horizon_cap : cfg.t_max;
    SeriesBundle bundle;
    try {
      bundle = determinant_series_bundle(model, initial, horizon, cfg.step,
                                         cfg.reduced_mode, series_opts);
    } catch (const DynamicsOverflowError&) {
      bundle.dense.truncated = true;
    }
    const std::string category =
        e.reason() == HorizonError::Reason::OverflowBeforeAsymptotic
            ? "overflow_before_asymptotic"
            : "horizon_cap_reached";
    summary["status"] = "error";
    summary["error_category"] = category;
    summary["error"] = e.what();
    summary["diagnostics"] = {
        {"symplectic_defect_max", bundle.dense.max_scaled_symplectic_defect},
        {"truncated", bundle.dense.truncated},
        {"samples", bundle.dense.size()}};
    write_series_csv(out_dir / cfg.series_csv, bundle.dense);
    write_summary(out_dir / cfg.summary_json, summary);
    return {kExitNotAsymptotic, category, summary};
  }
}

}  // namespace

ScenarioOutcome run_scenario(const ScenarioConfig& cfg,
                             const std::filesystem::path& out_dir) {
  if (cfg.kind == ScenarioKind::Qbme) return run_qbme(cfg, out_dir);
  return run_hamiltonian(cfg, out_dir);
}

}  // namespace covlyap::cli
