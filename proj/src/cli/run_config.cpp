#include "gupheat/cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace gupheat::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::set<std::string> allowed) {
  if (!obj.is_object()) throw ConfigError(where, where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError(where.empty() ? key : where + "." + key, "unknown configuration key");
    }
  }
}

std::string path_of(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path_of(where, key), "expected a number");
  return v.get<double>();
}

template <typename Int>
Int get_count(const json& obj, const std::string& where, const std::string& key, Int fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(path_of(where, key), "expected an integer");
  if (std::is_unsigned_v<Int> && v.get<long long>() < 0) {
    throw ConfigError(path_of(where, key), "expected a non-negative integer");
  }
  return v.get<Int>();
}

std::string get_string(const json& obj, const std::string& where, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(path_of(where, key), "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_numbers(const json& obj, const std::string& where, const std::string& key,
                                const std::vector<double>& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(path_of(where, key), "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(path_of(where, key), "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

EinsteinParams default_einstein_params() { return {240.0, 1, std::pow(10.0, -4.5)}; }

DebyeParams default_debye_params() { return {343.0, 1, std::pow(10.0, -4.5), 1e-45}; }

std::string_view to_string(debye::Normalization n) {
  return n == debye::Normalization::per_9NkB ? "9NkB" : "3NkB";
}

std::string_view to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

std::string_view to_string(Units u) { return u == Units::normalized ? "normalized" : "absolute"; }

RunConfig parse_run_config(const json& doc) {
  reject_unknown(doc, "", {"einstein", "debye", "oracle", "chain", "figures", "grid", "quadrature",
                           "units", "out", "format"});
  RunConfig cfg;

  int blocks = 0;
  if (doc.contains("einstein")) {
    const auto& e = doc.at("einstein");
    reject_unknown(e, "einstein", {"theta_E", "n_atoms", "kb_gamma2"});
    const auto d = default_einstein_params();
    cfg.einstein = EinsteinParams{get_number(e, "einstein", "theta_E", d.theta_E),
                                  get_count<long>(e, "einstein", "n_atoms", d.n_atoms),
                                  get_number(e, "einstein", "kb_gamma2", d.kb_gamma2)};
    ++blocks;
  }
  if (doc.contains("debye")) {
    const auto& e = doc.at("debye");
    reject_unknown(e, "debye", {"theta_D", "n_atoms", "kb_gamma2", "amp_factor", "normalization"});
    const auto d = default_debye_params();
    cfg.debye = DebyeParams{get_number(e, "debye", "theta_D", d.theta_D),
                            get_count<long>(e, "debye", "n_atoms", d.n_atoms),
                            get_number(e, "debye", "kb_gamma2", d.kb_gamma2),
                            get_number(e, "debye", "amp_factor", d.amp_factor)};
    const auto norm = get_string(e, "debye", "normalization", "9NkB");
    if (norm == "9NkB") {
      cfg.normalization = debye::Normalization::per_9NkB;
    } else if (norm == "3NkB") {
      cfg.normalization = debye::Normalization::per_3NkB;
    } else {
      throw ConfigError("debye.normalization", "expected \"9NkB\" or \"3NkB\"");
    }
    ++blocks;
  }
  if (doc.contains("oracle")) {
    const auto& e = doc.at("oracle");
    reject_unknown(e, "oracle", {"delta", "b", "weight_cutoff", "max_levels"});
    OracleCheckBlock o;
    o.delta = get_number(e, "oracle", "delta", o.delta);
    o.b = get_numbers(e, "oracle", "b", o.b);
    o.config.weight_cutoff = get_number(e, "oracle", "weight_cutoff", o.config.weight_cutoff);
    o.config.max_levels = get_count<std::size_t>(e, "oracle", "max_levels", o.config.max_levels);
    cfg.oracle = o;
    ++blocks;
  }
  if (doc.contains("chain")) {
    const auto& e = doc.at("chain");
    reject_unknown(e, "chain", {"n_atoms", "beta", "gamma2", "mode_index", "dt", "n_periods",
                                "amplitudes"});
    ChainBlock c;
    auto& cc = c.config;
    cc.n_atoms = get_count<std::size_t>(e, "chain", "n_atoms", cc.n_atoms);
    cc.beta = get_number(e, "chain", "beta", cc.beta);
    cc.gamma2 = get_number(e, "chain", "gamma2", cc.gamma2);
    cc.mode_index = get_count<long>(e, "chain", "mode_index", cc.mode_index);
    cc.dt = get_number(e, "chain", "dt", cc.dt);
    cc.n_periods = get_count<std::size_t>(e, "chain", "n_periods", cc.n_periods);
    c.amplitudes = get_numbers(e, "chain", "amplitudes", c.amplitudes);
    cfg.chain = c;
    ++blocks;
  }
  if (doc.contains("figures")) {
    const auto& e = doc.at("figures");
    reject_unknown(e, "figures", {"figure", "describe"});
    FiguresBlock f;
    f.figure = get_string(e, "figures", "figure", f.figure);
    if (e.contains("describe")) {
      if (!e.at("describe").is_boolean()) throw ConfigError("figures.describe", "expected a boolean");
      f.describe = e.at("describe").get<bool>();
    }
    cfg.figures = f;
    ++blocks;
  }
  if (blocks > 1) {
    throw ConfigError("", "exactly one of einstein/debye/oracle/chain/figures may be configured");
  }

  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    reject_unknown(g, "grid", {"t_min", "t_max", "n_points", "spacing"});
    cfg.grid.t_min = get_number(g, "grid", "t_min", cfg.grid.t_min);
    cfg.grid.t_max = get_number(g, "grid", "t_max", cfg.grid.t_max);
    cfg.grid.n_points = get_count<std::size_t>(g, "grid", "n_points", cfg.grid.n_points);
    const auto spacing = get_string(g, "grid", "spacing", "linear");
    if (spacing == "linear") {
      cfg.grid.spacing = Spacing::linear;
    } else if (spacing == "logarithmic") {
      cfg.grid.spacing = Spacing::logarithmic;
    } else {
      throw ConfigError("grid.spacing", "expected \"linear\" or \"logarithmic\"");
    }
  }
  if (doc.contains("quadrature")) {
    const auto& q = doc.at("quadrature");
    reject_unknown(q, "quadrature", {"rel_tol", "abs_tol", "max_subdivisions", "y_small_threshold"});
    auto& qc = cfg.quadrature;
    qc.rel_tol = get_number(q, "quadrature", "rel_tol", qc.rel_tol);
    qc.abs_tol = get_number(q, "quadrature", "abs_tol", qc.abs_tol);
    qc.max_subdivisions = get_count<std::size_t>(q, "quadrature", "max_subdivisions", qc.max_subdivisions);
    qc.y_small_threshold = get_number(q, "quadrature", "y_small_threshold", qc.y_small_threshold);
  }
  const auto units = get_string(doc, "", "units", "normalized");
  if (units == "normalized") {
    cfg.units = Units::normalized;
  } else if (units == "absolute") {
    cfg.units = Units::absolute;
  } else {
    throw ConfigError("units", "expected \"normalized\" or \"absolute\"");
  }
  if (doc.contains("out")) cfg.out = get_string(doc, "", "out", "");
  const auto format = get_string(doc, "", "format", "csv");
  if (format == "csv") {
    cfg.format = Format::csv;
  } else if (format == "json") {
    cfg.format = Format::json;
  } else {
    throw ConfigError("format", "expected \"csv\" or \"json\"");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config", "cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_run_config(doc);
}

json to_json(const RunConfig& c) {
  json doc;
  if (c.einstein) {
    doc["einstein"] = {{"theta_E", c.einstein->theta_E},
                       {"n_atoms", c.einstein->n_atoms},
                       {"kb_gamma2", c.einstein->kb_gamma2}};
  }
  if (c.debye) {
    doc["debye"] = {{"theta_D", c.debye->theta_D},
                    {"n_atoms", c.debye->n_atoms},
                    {"kb_gamma2", c.debye->kb_gamma2},
                    {"amp_factor", c.debye->amp_factor},
                    {"normalization", to_string(c.normalization)}};
  }
  if (c.oracle) {
    doc["oracle"] = {{"delta", c.oracle->delta},
                     {"b", c.oracle->b},
                     {"weight_cutoff", c.oracle->config.weight_cutoff},
                     {"max_levels", c.oracle->config.max_levels}};
  }
  if (c.chain) {
    const auto& cc = c.chain->config;
    doc["chain"] = {{"n_atoms", cc.n_atoms},       {"beta", cc.beta},
                    {"gamma2", cc.gamma2},         {"mode_index", cc.mode_index},
                    {"dt", cc.dt},                 {"n_periods", cc.n_periods},
                    {"amplitudes", c.chain->amplitudes}};
  }
  if (c.figures) {
    doc["figures"] = {{"figure", c.figures->figure}, {"describe", c.figures->describe}};
  }
  doc["grid"] = {{"t_min", c.grid.t_min},
                 {"t_max", c.grid.t_max},
                 {"n_points", c.grid.n_points},
                 {"spacing", c.grid.spacing == Spacing::linear ? "linear" : "logarithmic"}};
  doc["quadrature"] = {{"rel_tol", c.quadrature.rel_tol},
                       {"abs_tol", c.quadrature.abs_tol},
                       {"max_subdivisions", c.quadrature.max_subdivisions},
                       {"y_small_threshold", c.quadrature.y_small_threshold}};
  doc["units"] = to_string(c.units);
  if (c.out) doc["out"] = *c.out;
  doc["format"] = to_string(c.format);
  return doc;
}

}  // namespace gupheat::cli
