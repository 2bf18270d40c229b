#include "gupheat/quadrature.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <sstream>
#include <vector>

namespace gupheat {

namespace {

// Kronrod nodes on [-1, 1] (non-negative half); odd indices are Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureError::QuadratureError(const QuadratureResult& result, double target)
    : NumericalError([&] {
        std::ostringstream os;
        os << "quadrature did not converge: error estimate " << result.error_estimate
           << " > target " << target << " after " << result.subdivisions << " panels";
        return os.str();
      }()),
      result_(result) {}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& config) {
  if (!(config.rel_tol > 0.0) || !(config.abs_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (config.max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration limits must be finite");

  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }

  std::vector<Panel> panels;
  panels.reserve(std::min<std::size_t>(config.max_subdivisions, 4096));
  panels.push_back(evaluate_panel(f, a, b));
  double total = panels.front().value;
  double error = panels.front().error;

  auto target = [&] { return std::max(config.abs_tol, config.rel_tol * std::abs(total)); };

  while (error > target() && panels.size() < config.max_subdivisions) {
    std::pop_heap(panels.begin(), panels.end());
    const Panel worst = panels.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      std::push_heap(panels.begin(), panels.end());  // cannot split further
      break;
    }
    panels.back() = evaluate_panel(f, worst.a, mid);
    std::push_heap(panels.begin(), panels.end());
    panels.push_back(evaluate_panel(f, mid, worst.b));
    std::push_heap(panels.begin(), panels.end());
    // Re-sum instead of updating incrementally so rounding does not drift.
    total = 0.0;
    error = 0.0;
    for (const Panel& p : panels) {
      total += p.value;
      error += p.error;
    }
  }

  out.value = total;
  out.error_estimate = error;
  out.subdivisions = panels.size();
  out.converged = error <= target();
  if (!std::isfinite(total)) out.converged = false;
  return out;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& config) {
  const QuadratureResult r = integrate_adaptive(f, a, b, config);
  if (!r.converged) {
    throw QuadratureError(r, std::max(config.abs_tol, config.rel_tol * std::abs(r.value)));
  }
  return r.value;
}

}  // namespace gupheat
