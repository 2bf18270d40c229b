#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gupheat/cli/figures.hpp"

namespace gupheat::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int usage = 2;
}  // namespace exit_code

/// Order window accepted by oracle-check for the formula/oracle discrepancy.
inline constexpr double kOracleOrderMin = 1.8;
inline constexpr double kOracleOrderMax = 2.2;
/// Relative formula/oracle agreement demanded at b = 0.
inline constexpr double kOracleZeroTolerance = 1e-12;

/// Entry point behind the gup-heat executable. Results go to `out` (or to the
/// --out file), structured diagnostics {code, message, context} to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Machine-readable description of the figure specs, shared with the plotting
/// scripts so inset windows are not duplicated by hand.
nlohmann::json figure_catalog();

}  // namespace gupheat::cli
