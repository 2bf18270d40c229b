#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gupheat/core.hpp"
#include "gupheat/quadrature.hpp"

namespace gupheat::cli {

enum class FigureId { fig1, fig2, fig3, fig4 };

struct InsetWindow {
  double t_min;
  double t_max;
};

struct SweepValue {
  int exponent;  // kb_gamma2 = 10^exponent
  double value() const;
  std::string column() const;
};

struct FigureSpec {
  FigureId id;
  std::variant<EinsteinParams, DebyeParams> params;
  TemperatureGrid grid;
  std::vector<SweepValue> sweep;  // non-empty for fig2 and fig4
  std::vector<InsetWindow> insets;
  std::string normalization;  // "3NkB", "9NkB"; relative-change figures use "ratio"
};

std::optional<FigureId> parse_figure_id(std::string_view text);
std::string_view to_string(FigureId id);
const std::vector<FigureId>& all_figures();

FigureSpec figure_spec(FigureId id);

/// CSV content for one figure. Single-curve figures use the curve schema;
/// sweep figures carry one relative_delta column per swept kb_gamma2. The
/// first data row is the synthesized T -> 0 limit.
std::string figure_csv(const FigureSpec& spec, const QuadratureConfig& quad = {});

}  // namespace gupheat::cli
