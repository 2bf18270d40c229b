#include "gupheat/cli/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace gupheat::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), end);
}

std::string schema_line(std::string_view kind, std::string_view extra) {
  std::string line = "# gup-heat ";
  line += kind;
  line += " v" + std::to_string(kSchemaVersion);
  if (!extra.empty()) {
    line += ' ';
    line += extra;
  }
  return line;
}

std::string curve_row(const HeatCapacityPoint& p) {
  std::string row = format_number(p.temperature);
  for (double v : {p.cv_standard, p.cv_correction, p.cv_total, p.relative_delta}) {
    row += ',';
    row += format_number(v);
  }
  row += ',';
  row += to_string(p.status);
  return row;
}

std::string curve_csv(std::string_view kind, std::string_view normalization,
                      const std::vector<HeatCapacityPoint>& points) {
  std::string out = schema_line(kind, "normalization=" + std::string(normalization));
  out += '\n';
  out += kCurveHeader;
  out += '\n';
  for (const auto& p : points) {
    out += curve_row(p);
    out += '\n';
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw std::runtime_error("output directory does not exist: " + dir.string());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) {
      os.close();
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at " + path.string());
  }
}

}  // namespace gupheat::cli
