#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gupheat/chain.hpp"
#include "gupheat/core.hpp"
#include "gupheat/debye.hpp"
#include "gupheat/oracle.hpp"
#include "gupheat/quadrature.hpp"

namespace gupheat::cli {

enum class Format { csv, json };
enum class Units { normalized, absolute };

/// Bad configuration input; `key` names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct OracleCheckBlock {
  double delta = 1.0;
  std::vector<double> b = {1e-3, 5e-4, 2.5e-4};
  oracle::OracleConfig config;
};

struct ChainBlock {
  chain::ChainConfig config = [] {
    chain::ChainConfig c;
    c.gamma2 = 1e-3;
    return c;
  }();
  std::vector<double> amplitudes = {0.05, 0.1, 0.2, 0.4};
};

struct FiguresBlock {
  std::string figure = "all";
  bool describe = false;
};

/// Everything one invocation needs. At most one of the model blocks is set,
/// and it must match the subcommand being run.
struct RunConfig {
  std::optional<EinsteinParams> einstein;
  std::optional<DebyeParams> debye;
  debye::Normalization normalization = debye::Normalization::per_9NkB;
  std::optional<OracleCheckBlock> oracle;
  std::optional<ChainBlock> chain;
  std::optional<FiguresBlock> figures;

  TemperatureGrid grid;
  QuadratureConfig quadrature;
  Units units = Units::normalized;
  std::optional<std::string> out;
  Format format = Format::csv;
};

/// Defaults used when neither a config file nor flags set a parameter.
EinsteinParams default_einstein_params();
DebyeParams default_debye_params();

/// Strict parse: unknown keys and wrongly typed values throw ConfigError.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

nlohmann::json to_json(const RunConfig& config);

std::string_view to_string(debye::Normalization n);
std::string_view to_string(Format f);
std::string_view to_string(Units u);

}  // namespace gupheat::cli
