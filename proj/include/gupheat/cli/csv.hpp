#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gupheat/core.hpp"

namespace gupheat::cli {

inline constexpr std::string_view kCurveHeader =
    "temperature_K,cv_standard,cv_correction,cv_total,relative_delta,status";
inline constexpr std::string_view kChainHeader =
    "amplitude,omega_measured,omega_standard,shift,energy_drift,status";
inline constexpr int kSchemaVersion = 1;

/// Shortest decimal string that parses back to exactly `value`.
std::string format_number(double value);

/// First line of every CSV this tool writes, e.g. "# gup-heat einstein v1 normalization=3NkB".
std::string schema_line(std::string_view kind, std::string_view extra = {});

std::string curve_row(const HeatCapacityPoint& point);

std::string curve_csv(std::string_view kind, std::string_view normalization,
                      const std::vector<HeatCapacityPoint>& points);

/// Writes through a temporary file in the same directory and renames it into
/// place. Throws std::runtime_error if the directory does not exist or the
/// write fails; no partial file is left behind.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace gupheat::cli
