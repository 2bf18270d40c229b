#include "gupheat/cli/figures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gupheat/cli/csv.hpp"
#include "gupheat/debye.hpp"
#include "gupheat/einstein.hpp"

namespace gupheat::cli {

namespace {

constexpr double kCopperEinsteinTemperature = 240.0;
constexpr double kCopperDebyeTemperature = 343.0;
const double kFigureKbGamma2 = std::pow(10.0, -4.5);
constexpr double kFigureAmpFactor = 1e-45;

const std::vector<SweepValue> kSweep = {{-1}, {-3}, {-5}, {-7}, {-9}};

// 1 K steps over (0, 700] K.
TemperatureGrid figure_grid() { return {1.0, 700.0, 700, Spacing::linear}; }

std::string sweep_csv(FigureId id, const std::vector<SweepValue>& sweep,
                      const std::vector<std::vector<HeatCapacityPoint>>& curves) {
  std::string out = schema_line(std::string(to_string(id)) + "-sweep", "quantity=relative_delta");
  out += "\ntemperature_K";
  for (const auto& s : sweep) out += "," + s.column();
  out += ",status\n";

  // T -> 0 limit row.
  out += "0";
  for (std::size_t i = 0; i < sweep.size(); ++i) out += ",nan";
  out += ",limit\n";

  const std::size_t rows = curves.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    out += format_number(curves.front()[r].temperature);
    PointStatus status = PointStatus::ok;
    for (const auto& c : curves) {
      out += ',';
      out += format_number(c[r].relative_delta);
      if (status == PointStatus::ok) status = c[r].status;
    }
    out += ',';
    out += to_string(status);
    out += '\n';
  }
  return out;
}

}  // namespace

double SweepValue::value() const { return std::pow(10.0, exponent); }

std::string SweepValue::column() const {
  return "relative_delta_kbg2_1e" + std::to_string(exponent);
}

std::optional<FigureId> parse_figure_id(std::string_view text) {
  for (FigureId id : all_figures()) {
    if (text == to_string(id)) return id;
  }
  return std::nullopt;
}

std::string_view to_string(FigureId id) {
  switch (id) {
    case FigureId::fig1: return "fig1";
    case FigureId::fig2: return "fig2";
    case FigureId::fig3: return "fig3";
    case FigureId::fig4: return "fig4";
  }
  return "unknown";
}

const std::vector<FigureId>& all_figures() {
  static const std::vector<FigureId> ids = {FigureId::fig1, FigureId::fig2, FigureId::fig3,
                                            FigureId::fig4};
  return ids;
}

FigureSpec figure_spec(FigureId id) {
  const EinsteinParams einstein{kCopperEinsteinTemperature, 1, kFigureKbGamma2};
  const DebyeParams debye{kCopperDebyeTemperature, 1, kFigureKbGamma2, kFigureAmpFactor};
  switch (id) {
    case FigureId::fig1:
      return {id, einstein, figure_grid(), {}, {{40, 50}, {100, 130}}, "3NkB"};
    case FigureId::fig2:
      return {id, einstein, figure_grid(), kSweep, {{20, 100}, {110, 130}}, "ratio"};
    case FigureId::fig3:
      return {id, debye, figure_grid(), {}, {{30, 40}, {75, 95}}, "9NkB"};
    case FigureId::fig4:
      return {id, debye, figure_grid(), kSweep, {{20, 50}, {50, 100}, {90, 130}}, "ratio"};
  }
  throw std::invalid_argument("unknown figure id");
}

std::string figure_csv(const FigureSpec& spec, const QuadratureConfig& quad) {
  auto run_curve = [&](double kb_gamma2) {
    if (const auto* e = std::get_if<EinsteinParams>(&spec.params)) {
      EinsteinParams p = *e;
      p.kb_gamma2 = kb_gamma2;
      return einstein::curve(p, spec.grid);
    }
    DebyeParams p = std::get<DebyeParams>(spec.params);
    p.kb_gamma2 = kb_gamma2;
    return debye::curve(p, spec.grid, quad);
  };

  if (spec.sweep.empty()) {
    const double kb = std::visit([](const auto& p) { return p.kb_gamma2; }, spec.params);
    std::vector<HeatCapacityPoint> points;
    points.push_back(HeatCapacityPoint::zero_temperature_limit());
    const auto curve = run_curve(kb);
    points.insert(points.end(), curve.begin(), curve.end());
    const std::string kind =
        std::holds_alternative<EinsteinParams>(spec.params) ? "einstein" : "debye";
    return curve_csv(kind, spec.normalization, points);
  }

  std::vector<std::vector<HeatCapacityPoint>> curves;
  for (const auto& s : spec.sweep) curves.push_back(run_curve(s.value()));
  return sweep_csv(spec.id, spec.sweep, curves);
}

}  // namespace gupheat::cli
