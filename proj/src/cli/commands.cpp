#include "gupheat/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <ostream>

#include <CLI11.hpp>

#include "gupheat/chain.hpp"
#include "gupheat/cli/csv.hpp"
#include "gupheat/cli/run_config.hpp"
#include "gupheat/debye.hpp"
#include "gupheat/einstein.hpp"
#include "gupheat/fit.hpp"
#include "gupheat/oracle.hpp"

namespace gupheat::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Carries an exit code and a structured diagnostic up to run_cli.
struct Failure {
  int code;
  std::string kind;
  std::string message;
  json context = json::object();
};

void emit(std::ostream& err, const std::string& kind, const std::string& message,
          const json& context = json::object()) {
  err << json{{"code", kind}, {"message", message}, {"context", context}}.dump() << '\n';
}

json validation_context(const ValidationReport& report) {
  return {{"violations", report.violations}, {"warnings", report.warnings}};
}

void emit_warnings(std::ostream& err, const ValidationReport& report) {
  for (const auto& w : report.warnings) emit(err, "warning", w);
}

void deliver(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (!cfg.out) {
    out << content;
    return;
  }
  try {
    write_atomic(*cfg.out, content);
  } catch (const std::exception& e) {
    throw Failure{exit_code::usage, "io_error", e.what(), {{"path", *cfg.out}}};
  }
}

json point_json(const HeatCapacityPoint& p) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"temperature_K", p.temperature},      {"cv_standard", num(p.cv_standard)},
          {"cv_correction", num(p.cv_correction)}, {"cv_total", num(p.cv_total)},
          {"relative_delta", num(p.relative_delta)}, {"status", to_string(p.status)}};
}

std::string render_curve(const RunConfig& cfg, std::string_view kind, std::string_view normalization,
                         const json& params, const std::vector<HeatCapacityPoint>& points) {
  if (cfg.format == Format::csv) return curve_csv(kind, normalization, points);
  json doc = {{"schema", "gup-heat/" + std::string(kind)},
              {"version", kSchemaVersion},
              {"normalization", normalization},
              {"params", params},
              {"points", json::array()}};
  for (const auto& p : points) doc["points"].push_back(point_json(p));
  return doc.dump(2) + "\n";
}

// Options shared by every subcommand.
struct CommonFlags {
  std::string config;
  std::string out;
  std::string format;
  CLI::Option* out_opt = nullptr;
  CLI::Option* format_opt = nullptr;

  void attach(CLI::App* app, const std::string& out_help) {
    app->add_option("--config", config, "JSON config file (flags override it)");
    out_opt = app->add_option("--out", out, out_help);
    format_opt = app->add_option("--format", format, "Output format")
                     ->check(CLI::IsMember({"csv", "json"}));
  }

  RunConfig load() const {
    RunConfig cfg = config.empty() ? RunConfig{} : load_run_config(config);
    if (out_opt->count() > 0) cfg.out = out;
    if (format_opt->count() > 0) cfg.format = format == "json" ? Format::json : Format::csv;
    return cfg;
  }
};

template <typename T>
struct Flag {
  T value{};
  CLI::Option* opt = nullptr;

  void apply(T& target) const {
    if (opt != nullptr && opt->count() > 0) target = value;
  }
};

template <typename T>
Flag<T>& add_flag(CLI::App* app, Flag<T>& flag, const std::string& name, const std::string& help) {
  flag.opt = app->add_option(name, flag.value, help);
  return flag;
}

void require_only(const RunConfig& cfg, std::string_view block) {
  const std::pair<std::string_view, bool> present[] = {
      {"einstein", cfg.einstein.has_value()}, {"debye", cfg.debye.has_value()},
      {"oracle", cfg.oracle.has_value()},     {"chain", cfg.chain.has_value()},
      {"figures", cfg.figures.has_value()}};
  for (const auto& [name, set] : present) {
    if (set && name != block) {
      throw Failure{exit_code::usage, "config_error",
                    "config block '" + std::string(name) + "' does not belong to subcommand '" +
                        std::string(block) + "'",
                    {{"key", name}}};
    }
  }
}

struct GridFlags {
  Flag<double> t_min, t_max;
  Flag<std::size_t> n_points;
  Flag<std::string> spacing;

  void attach(CLI::App* app) {
    add_flag(app, t_min, "--t-min", "Lowest temperature [K]");
    add_flag(app, t_max, "--t-max", "Highest temperature [K]");
    add_flag(app, n_points, "--n-points", "Number of grid temperatures");
    add_flag(app, spacing, "--spacing", "linear or logarithmic")
        .opt->check(CLI::IsMember({"linear", "logarithmic"}));
  }

  void apply(TemperatureGrid& grid) const {
    t_min.apply(grid.t_min);
    t_max.apply(grid.t_max);
    n_points.apply(grid.n_points);
    if (spacing.opt->count() > 0) {
      grid.spacing = spacing.value == "linear" ? Spacing::linear : Spacing::logarithmic;
    }
  }
};

std::vector<double> validated_temperatures(const TemperatureGrid& grid) {
  const auto report = validate(grid);
  if (!report.ok()) {
    throw Failure{exit_code::usage, "domain_error", "invalid temperature grid",
                  validation_context(report)};
  }
  return grid.temperatures();
}

// ---------------------------------------------------------------- einstein

struct EinsteinCommand {
  CommonFlags common;
  GridFlags grid;
  Flag<double> theta, kb_gamma2;
  Flag<long> n_atoms;
  Flag<std::string> units;

  void attach(CLI::App* app) {
    common.attach(app, "Output file (stdout if omitted)");
    grid.attach(app);
    add_flag(app, theta, "--theta-E,--theta-e", "Einstein temperature [K]");
    add_flag(app, n_atoms, "--n-atoms", "Number of atoms N");
    add_flag(app, kb_gamma2, "--kb-gamma2", "k_B * gamma_EM^2 [1/K]");
    add_flag(app, units, "--units", "normalized (per 3Nk_B) or absolute (J/K)")
        .opt->check(CLI::IsMember({"normalized", "absolute"}));
  }

  int run(std::ostream& out, std::ostream& err) const {
    RunConfig cfg = common.load();
    require_only(cfg, "einstein");
    EinsteinParams params = cfg.einstein.value_or(default_einstein_params());
    theta.apply(params.theta_E);
    n_atoms.apply(params.n_atoms);
    kb_gamma2.apply(params.kb_gamma2);
    grid.apply(cfg.grid);
    if (units.opt->count() > 0) cfg.units = units.value == "absolute" ? Units::absolute : Units::normalized;

    const auto report = validate(params);
    if (!report.ok()) {
      throw Failure{exit_code::usage, "domain_error", "invalid Einstein parameters",
                    validation_context(report)};
    }
    emit_warnings(err, report);
    validated_temperatures(cfg.grid);

    auto points = einstein::curve(params, cfg.grid);
    std::string normalization = "3NkB";
    if (cfg.units == Units::absolute) {
      const double scale = 3.0 * static_cast<double>(params.n_atoms) * constants::k_B;
      for (auto& p : points) p = p.scaled(scale);
      normalization = "J/K";
    }
    const json params_json = {{"theta_E", params.theta_E},
                              {"n_atoms", params.n_atoms},
                              {"kb_gamma2", params.kb_gamma2},
                              {"b", params.b()}};
    deliver(cfg, render_curve(cfg, "einstein", normalization, params_json, points), out);
    return exit_code::ok;
  }
};

// ---------------------------------------------------------------- debye

struct QuadratureFlags {
  Flag<double> rel_tol, abs_tol, y_small;
  Flag<std::size_t> max_subdivisions;

  void attach(CLI::App* app) {
    add_flag(app, rel_tol, "--rel-tol", "Quadrature relative tolerance");
    add_flag(app, abs_tol, "--abs-tol", "Quadrature absolute tolerance");
    add_flag(app, max_subdivisions, "--max-subdivisions", "Quadrature panel limit");
    add_flag(app, y_small, "--y-small-threshold", "Taylor-form threshold for the integrands");
  }

  void apply(QuadratureConfig& q) const {
    rel_tol.apply(q.rel_tol);
    abs_tol.apply(q.abs_tol);
    max_subdivisions.apply(q.max_subdivisions);
    y_small.apply(q.y_small_threshold);
  }
};

void require_quadrature(const QuadratureConfig& q) {
  if (!(q.rel_tol > 0.0) || !(q.abs_tol > 0.0) || q.max_subdivisions < 1 ||
      !(q.y_small_threshold > 0.0)) {
    throw Failure{exit_code::usage, "domain_error",
                  "quadrature tolerances and threshold must be positive, max_subdivisions >= 1"};
  }
}

struct DebyeCommand {
  CommonFlags common;
  GridFlags grid;
  QuadratureFlags quad;
  Flag<double> theta, kb_gamma2, amp_factor;
  Flag<long> n_atoms;
  Flag<std::string> normalization, units;

  void attach(CLI::App* app) {
    common.attach(app, "Output file (stdout if omitted)");
    grid.attach(app);
    quad.attach(app);
    add_flag(app, theta, "--theta-D,--theta-d", "Debye temperature [K]");
    add_flag(app, n_atoms, "--n-atoms", "Number of atoms N");
    add_flag(app, kb_gamma2, "--kb-gamma2", "k_B * gamma_EM^2 [1/K]");
    add_flag(app, amp_factor, "--amp-factor", "gamma_EM^2 u0^2 k_B^2 / hbar^2 [1/K^2]");
    add_flag(app, normalization, "--normalization", "9NkB (default) or 3NkB")
        .opt->check(CLI::IsMember({"9NkB", "3NkB"}));
    add_flag(app, units, "--units", "normalized or absolute (J/K)")
        .opt->check(CLI::IsMember({"normalized", "absolute"}));
  }

  int run(std::ostream& out, std::ostream& err) const {
    RunConfig cfg = common.load();
    require_only(cfg, "debye");
    DebyeParams params = cfg.debye.value_or(default_debye_params());
    theta.apply(params.theta_D);
    n_atoms.apply(params.n_atoms);
    kb_gamma2.apply(params.kb_gamma2);
    amp_factor.apply(params.amp_factor);
    grid.apply(cfg.grid);
    quad.apply(cfg.quadrature);
    if (normalization.opt->count() > 0) {
      cfg.normalization = normalization.value == "3NkB" ? debye::Normalization::per_3NkB
                                                         : debye::Normalization::per_9NkB;
    }
    if (units.opt->count() > 0) cfg.units = units.value == "absolute" ? Units::absolute : Units::normalized;

    const auto report = validate(params);
    if (!report.ok()) {
      throw Failure{exit_code::usage, "domain_error", "invalid Debye parameters",
                    validation_context(report)};
    }
    emit_warnings(err, report);
    require_quadrature(cfg.quadrature);
    validated_temperatures(cfg.grid);

    auto points = debye::curve(params, cfg.grid, cfg.quadrature, cfg.normalization);
    std::string norm_label(to_string(cfg.normalization));
    if (cfg.units == Units::absolute) {
      const double per = cfg.normalization == debye::Normalization::per_9NkB ? 9.0 : 3.0;
      const double scale = per * static_cast<double>(params.n_atoms) * constants::k_B;
      for (auto& p : points) p = p.scaled(scale);
      norm_label = "J/K";
    }
    std::size_t flagged = 0;
    for (const auto& p : points) flagged += p.status == PointStatus::ok ? 0 : 1;
    if (flagged > 0) {
      emit(err, "flagged_points", std::to_string(flagged) + " temperature(s) could not be evaluated",
           {{"count", flagged}});
    }
    const json params_json = {{"theta_D", params.theta_D},
                              {"n_atoms", params.n_atoms},
                              {"kb_gamma2", params.kb_gamma2},
                              {"amp_factor", params.amp_factor}};
    deliver(cfg, render_curve(cfg, "debye", norm_label, params_json, points), out);
    return exit_code::ok;
  }
};

// ---------------------------------------------------------------- oracle-check

struct OracleCommand {
  CommonFlags common;
  Flag<double> delta, weight_cutoff;
  Flag<std::vector<double>> b;
  Flag<std::size_t> max_levels;

  void attach(CLI::App* app) {
    common.attach(app, "Report file (stdout if omitted)");
    add_flag(app, delta, "--delta", "Reduced inverse temperature theta_E / T");
    add_flag(app, b, "--b", "GUP strengths to compare (repeatable, >= 2)");
    add_flag(app, weight_cutoff, "--weight-cutoff", "Boltzmann weight below which levels stop");
    add_flag(app, max_levels, "--max-levels", "Hard cap on spectrum levels");
  }

  int run(std::ostream& out, std::ostream& err) const {
    RunConfig cfg = common.load();
    require_only(cfg, "oracle");
    OracleCheckBlock o = cfg.oracle.value_or(OracleCheckBlock{});
    delta.apply(o.delta);
    b.apply(o.b);
    weight_cutoff.apply(o.config.weight_cutoff);
    max_levels.apply(o.config.max_levels);

    if (o.b.size() < 2) {
      throw Failure{exit_code::usage, "usage_error",
                    "at least two b values are needed to fit the discrepancy order",
                    {{"b", o.b}}};
    }
    for (double v : o.b) {
      if (!(v > 0.0)) {
        throw Failure{exit_code::usage, "domain_error", "b values must be > 0", {{"b", v}}};
      }
    }

    json rows = json::array();
    std::vector<double> log_b, log_d;
    double zero_rel = kNaN;
    try {
      const double standard = einstein::cv_standard(o.delta);
      zero_rel = std::abs(standard - oracle::oracle_cv(o.delta, 0.0, o.config)) / standard;
      for (double bv : o.b) {
        const double formula = standard + einstein::cv_correction(o.delta, bv);
        const auto spectrum = oracle::build_spectrum(o.delta, bv, o.config);
        const double exact = oracle::oracle_cv(spectrum, o.delta);
        const double d = std::abs(formula - exact);
        if (spectrum.perturbative_warning) {
          emit(err, "warning", "retained levels leave the perturbative regime",
               {{"b", bv}, {"max_relative_correction", spectrum.max_relative_correction}});
        }
        rows.push_back({{"delta", o.delta}, {"b", bv}, {"cv_formula", formula},
                        {"cv_oracle", exact}, {"discrepancy", d}, {"discrepancy_over_b2", d / (bv * bv)}});
        if (d > 0.0) {
          log_b.push_back(std::log(bv));
          log_d.push_back(std::log(d));
        }
      }
    } catch (const DomainError& e) {
      throw Failure{exit_code::usage, "domain_error", e.what(), {{"delta", o.delta}}};
    } catch (const NumericalError& e) {
      throw Failure{exit_code::usage, "numerical_error", e.what(), {{"delta", o.delta}}};
    }

    const double order = log_b.size() >= 2 ? fit_slope(log_b, log_d) : kNaN;
    const bool order_ok = order >= kOracleOrderMin && order <= kOracleOrderMax;
    const bool zero_ok = zero_rel <= kOracleZeroTolerance;
    const bool pass = order_ok && zero_ok;

    std::string content;
    if (cfg.format == Format::json) {
      json doc = {{"schema", "gup-heat/oracle-check"},
                  {"version", kSchemaVersion},
                  {"pairs", rows},
                  {"fitted_order", std::isfinite(order) ? json(order) : json(nullptr)},
                  {"order_window", {kOracleOrderMin, kOracleOrderMax}},
                  {"zero_b_relative_error", zero_rel},
                  {"zero_b_tolerance", kOracleZeroTolerance},
                  {"pass", pass}};
      content = doc.dump(2) + "\n";
    } else {
      content = schema_line("oracle-check") + "\n";
      content += "delta,b,cv_formula,cv_oracle,discrepancy,discrepancy_over_b2\n";
      for (const auto& r : rows) {
        content += format_number(r["delta"].get<double>()) + "," + format_number(r["b"].get<double>()) +
                   "," + format_number(r["cv_formula"].get<double>()) + "," +
                   format_number(r["cv_oracle"].get<double>()) + "," +
                   format_number(r["discrepancy"].get<double>()) + "," +
                   format_number(r["discrepancy_over_b2"].get<double>()) + "\n";
      }
      content += "# fitted_order=" + format_number(order) + "\n";
      content += "# zero_b_relative_error=" + format_number(zero_rel) + "\n";
      content += std::string("# verdict=") + (pass ? "pass" : "fail") + "\n";
    }
    deliver(cfg, content, out);
    if (!pass) {
      emit(err, "check_failed", "formula/oracle discrepancy does not scale as b^2",
           {{"fitted_order", std::isfinite(order) ? json(order) : json(nullptr)},
            {"zero_b_relative_error", zero_rel}});
      return exit_code::check_failed;
    }
    return exit_code::ok;
  }
};

// ---------------------------------------------------------------- chain

struct ChainCommand {
  CommonFlags common;
  Flag<std::size_t> n_atoms, n_periods;
  Flag<double> beta, gamma2, dt;
  Flag<long> mode_index;
  Flag<std::vector<double>> amplitudes;

  void attach(CLI::App* app) {
    common.attach(app, "CSV output; the fit goes to a .fit.json sidecar next to it");
    add_flag(app, n_atoms, "--n-atoms", "Chain length S (periodic)");
    add_flag(app, beta, "--beta", "Reduced spring constant");
    add_flag(app, gamma2, "--gamma2", "Reduced GUP knob");
    add_flag(app, mode_index, "--mode-index", "Mode m, k = 2 pi m / S");
    add_flag(app, dt, "--dt", "Time step (0 = period / 200)");
    add_flag(app, n_periods, "--n-periods", "Integration length in unmodified periods");
    add_flag(app, amplitudes, "--amplitude", "Wave amplitudes to scan (repeatable)");
  }

  int run(std::ostream& out, std::ostream&  err) const {
    RunConfig cfg = common.load();
    require_only(cfg, "chain");
    ChainBlock block = cfg.chain.value_or(ChainBlock{});
    auto& cc = block.config;
    n_atoms.apply(cc.n_atoms);
    beta.apply(cc.beta);
    gamma2.apply(cc.gamma2);
    mode_index.apply(cc.mode_index);
    dt.apply(cc.dt);
    n_periods.apply(cc.n_periods);
    amplitudes.apply(block.amplitudes);

    const auto& amps = block.amplitudes;
    if (amps.size() < 3) {
      throw Failure{exit_code::usage, "usage_error", "amplitude scan needs >= 3 amplitudes"};
    }
    const auto [lo, hi] = std::minmax_element(amps.begin(), amps.end());
    if (!(*hi >= 4.0 * *lo)) {
      throw Failure{exit_code::usage, "usage_error", "amplitudes must span at least a factor of 4",
                    {{"amplitudes", amps}}};
    }
    for (double a : amps) {
      chain::ChainConfig member = cc;
      member.amplitude = a;
      const auto report = chain::validate(member);
      if (!report.ok()) {
        throw Failure{exit_code::usage, "domain_error", "invalid chain configuration",
                      validation_context(report)};
      }
    }

    std::vector<chain::ChainResult> results;
    std::vector<std::string> statuses;
    bool failed = false;
    for (double a : amps) {
      chain::ChainConfig member = cc;
      member.amplitude = a;
      try {
        const auto r = chain::run(member);
        results.push_back(r);
        if (r.passes_drift_gate()) {
          statuses.emplace_back("ok");
        } else {
          statuses.emplace_back("drift_gate");
          failed = true;
        }
      } catch (const std::exception& e) {
        chain::ChainResult r;
        r.amplitude = a;
        r.omega_standard = member.omega_standard();
        r.omega_measured = r.shift = r.energy_drift = kNaN;
        results.push_back(r);
        statuses.emplace_back("failed");
        failed = true;
        emit(err, "numerical_error", e.what(), {{"amplitude", a}});
      }
    }

    json fit = {{"schema", "gup-heat/chain-fit"},
                {"version", kSchemaVersion},
                {"config",
                 {{"n_atoms", cc.n_atoms}, {"beta", cc.beta}, {"gamma2", cc.gamma2},
                  {"mode_index", cc.mode_index}, {"dt", cc.time_step()}, {"n_periods", cc.n_periods}}},
                {"energy_drift_gate", chain::kEnergyDriftGate},
                {"all_runs_ok", !failed}};
    if (!failed) {
      const auto scan = chain::summarize_scan(results);
      fit["no_signal"] = scan.no_signal;
      fit["exponent"] = scan.exponent ? json(*scan.exponent) : json(nullptr);
    } else {
      fit["no_signal"] = nullptr;
      fit["exponent"] = nullptr;
    }

    std::string content;
    if (cfg.format == Format::json) {
      json doc = fit;
      doc["schema"] = "gup-heat/chain";
      doc["runs"] = json::array();
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
        doc["runs"].push_back({{"amplitude", r.amplitude}, {"omega_measured", num(r.omega_measured)},
                               {"omega_standard", r.omega_standard}, {"shift", num(r.shift)},
                               {"energy_drift", num(r.energy_drift)}, {"status", statuses[i]}});
      }
      content = doc.dump(2) + "\n";
    } else {
      content = schema_line("chain") + "\n";
      content += kChainHeader;
      content += '\n';
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        content += format_number(r.amplitude) + "," + format_number(r.omega_measured) + "," +
                   format_number(r.omega_standard) + "," + format_number(r.shift) + "," +
                   format_number(r.energy_drift) + "," + statuses[i] + "\n";
      }
    }

    deliver(cfg, content, out);
    if (cfg.format == Format::csv) {
      if (cfg.out) {
        fs::path sidecar = *cfg.out;
        sidecar.replace_extension(".fit.json");
        RunConfig side = cfg;
        side.out = sidecar.string();
        deliver(side, fit.dump(2) + "\n", out);
      } else {
        out << "# fit " << fit.dump() << '\n';
      }
    }
    if (failed) {
      emit(err, "check_failed", "one or more scan members failed or exceeded the energy-drift gate");
      return exit_code::check_failed;
    }
    return exit_code::ok;
  }
};

// ---------------------------------------------------------------- figures

struct FiguresCommand {
  CommonFlags common;
  Flag<std::string> figure;
  bool describe = false;
  CLI::Option* describe_opt = nullptr;

  void attach(CLI::App* app) {
    common.attach(app, "Output directory (default: current directory)");
    add_flag(app, figure, "--figure", "fig1, fig2, fig3, fig4 or all");
    describe_opt = app->add_flag("--describe", describe, "Also write figures.json with the figure specs");
  }

  int run(std::ostream& out, std::ostream&) const {
    RunConfig cfg = common.load();
    require_only(cfg, "figures");
    FiguresBlock block = cfg.figures.value_or(FiguresBlock{});
    figure.apply(block.figure);
    if (describe_opt->count() > 0) block.describe = describe;
    if (cfg.format != Format::csv) {
      throw Failure{exit_code::usage, "usage_error", "figures are written as CSV only"};
    }

    std::vector<FigureId> ids;
    if (block.figure == "all") {
      ids = all_figures();
    } else if (const auto id = parse_figure_id(block.figure)) {
      ids.push_back(*id);
    } else {
      throw Failure{exit_code::usage, "usage_error", "unknown figure id",
                    {{"figure", block.figure}}};
    }

    const fs::path dir = cfg.out.value_or(".");
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
      throw Failure{exit_code::usage, "io_error", "output directory does not exist",
                    {{"path", dir.string()}}};
    }
    for (FigureId id : ids) {
      const fs::path path = dir / (std::string(to_string(id)) + ".csv");
      RunConfig target = cfg;
      target.out = path.string();
      deliver(target, figure_csv(figure_spec(id), cfg.quadrature), out);
      out << path.string() << '\n';
    }
    if (block.describe) {
      const fs::path path = dir / "figures.json";
      RunConfig target = cfg;
      target.out = path.string();
      deliver(target, figure_catalog().dump(2) + "\n", out);
      out << path.string() << '\n';
    }
    return exit_code::ok;
  }
};

}  // namespace

json figure_catalog() {
  json figures = json::array();
  for (FigureId id : all_figures()) {
    const FigureSpec spec = figure_spec(id);
    json entry = {{"id", to_string(id)},
                  {"file", std::string(to_string(id)) + ".csv"},
                  {"normalization", spec.normalization},
                  {"quantity", spec.sweep.empty() ? "cv" : "relative_delta"},
                  {"grid", {{"t_min", spec.grid.t_min}, {"t_max", spec.grid.t_max},
                            {"n_points", spec.grid.n_points}}}};
    if (const auto* e = std::get_if<EinsteinParams>(&spec.params)) {
      entry["model"] = "einstein";
      entry["params"] = {{"theta_E", e->theta_E}, {"kb_gamma2", e->kb_gamma2}};
    } else {
      const auto& d = std::get<DebyeParams>(spec.params);
      entry["model"] = "debye";
      entry["params"] = {{"theta_D", d.theta_D}, {"kb_gamma2", d.kb_gamma2},
                         {"amp_factor", d.amp_factor}};
    }
    entry["sweep"] = json::array();
    for (const auto& s : spec.sweep) {
      entry["sweep"].push_back({{"kb_gamma2", s.value()}, {"column", s.column()}});
    }
    entry["insets"] = json::array();
    for (const auto& w : spec.insets) entry["insets"].push_back({w.t_min, w.t_max});
    figures.push_back(entry);
  }
  return {{"schema", "gup-heat/figures"}, {"version", kSchemaVersion}, {"figures", figures}};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Standard and GUP-corrected specific heat of solids", "gup-heat"};
  app.require_subcommand(1, 1);

  EinsteinCommand einstein_cmd;
  DebyeCommand debye_cmd;
  OracleCommand oracle_cmd;
  ChainCommand chain_cmd;
  FiguresCommand figures_cmd;

  std::vector<std::pair<CLI::App*, std::function<int()>>> commands;
  auto* e = app.add_subcommand("einstein", "Einstein-model heat capacity curve");
  einstein_cmd.attach(e);
  commands.emplace_back(e, [&] { return einstein_cmd.run(out, err); });
  auto* d = app.add_subcommand("debye", "Debye-model heat capacity curve");
  debye_cmd.attach(d);
  commands.emplace_back(d, [&] { return debye_cmd.run(out, err); });
  auto* o = app.add_subcommand("oracle-check", "Closed-form vs brute-force spectrum check");
  oracle_cmd.attach(o);
  commands.emplace_back(o, [&] { return oracle_cmd.run(out, err); });
  auto* c = app.add_subcommand("chain", "Nonlinear lattice-chain dispersion scan");
  chain_cmd.attach(c);
  commands.emplace_back(c, [&] { return chain_cmd.run(out, err); });
  auto* f = app.add_subcommand("figures", "Write the data behind the four figures");
  figures_cmd.attach(f);
  commands.emplace_back(f, [&] { return figures_cmd.run(out, err); });

  std::vector<const char*> argv;
  argv.push_back("gup-heat");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& ex) {
    emit(err, "usage_error", ex.what());
    return exit_code::usage;
  }

  try {
    for (auto& [sub, fn] : commands) {
      if (sub->parsed()) return fn();
    }
  } catch (const Failure& fail) {
    emit(err, fail.kind, fail.message, fail.context);
    return fail.code;
  } catch (const ConfigError& ex) {
    emit(err, "config_error", ex.what(), {{"key", ex.key()}});
    return exit_code::usage;
  } catch (const DomainError& ex) {
    emit(err, "domain_error", ex.what());
    return exit_code::usage;
  } catch (const std::exception& ex) {
    emit(err, "internal_error", ex.what());
    return exit_code::usage;
  }
  emit(err, "usage_error", "no subcommand given");
  return exit_code::usage;
}

}  // namespace gupheat::cli
