#include "gupheat/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gupheat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string describe(double value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

}  // namespace

std::string_view to_string(PointStatus status) {
  switch (status) {
    case PointStatus::ok: return "ok";
    case PointStatus::limit: return "limit";
    case PointStatus::domain_error: return "domain_error";
    case PointStatus::numerical_error: return "numerical_error";
    case PointStatus::undefined: return "undefined";
  }
  return "unknown";
}

std::vector<double> TemperatureGrid::temperatures() const {
  const auto report = validate(*this);
  if (!report.ok()) throw DomainError("invalid temperature grid: " + report.violations.front());

  std::vector<double> out(n_points);
  if (n_points == 1) {
    out[0] = t_min;
    return out;
  }
  const double last = static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double f = static_cast<double>(i) / last;
    if (spacing == Spacing::linear) {
      out[i] = t_min + (t_max - t_min) * f;
    } else {
      out[i] = t_min * std::pow(t_max / t_min, f);
    }
  }
  // Pin the endpoints against rounding in the interpolation.
  out.front() = t_min;
  out.back() = t_max;
  return out;
}

HeatCapacityPoint HeatCapacityPoint::from_parts(double temperature, double standard,
                                                double correction) {
  HeatCapacityPoint p;
  p.temperature = temperature;
  p.cv_standard = standard;
  p.cv_correction = correction;
  p.cv_total = standard + correction;
  if (standard > 0.0) {
    p.relative_delta = 0.0 - correction / standard;  // +0 rather than -0 when the correction vanishes
  } else {
    p.relative_delta = kNaN;
    p.status = PointStatus::undefined;
    p.detail = "cv_standard vanishes; relative change undefined";
  }
  return p;
}

HeatCapacityPoint HeatCapacityPoint::failed(double temperature, PointStatus status,
                                            std::string detail) {
  HeatCapacityPoint p;
  p.temperature = temperature;
  p.cv_standard = p.cv_correction = p.cv_total = p.relative_delta = kNaN;
  p.status = status;
  p.detail = std::move(detail);
  return p;
}

HeatCapacityPoint HeatCapacityPoint::zero_temperature_limit() {
  HeatCapacityPoint p;
  p.relative_delta = kNaN;
  p.status = PointStatus::limit;
  p.detail = "analytic T -> 0 limit";
  return p;
}

HeatCapacityPoint HeatCapacityPoint::scaled(double factor) const {
  HeatCapacityPoint p = *this;
  p.cv_standard *= factor;
  p.cv_correction *= factor;
  p.cv_total = p.cv_standard + p.cv_correction;
  if (p.status == PointStatus::ok) p.relative_delta = 0.0 - p.cv_correction / p.cv_standard;
  return p;
}

bool satisfies_invariants(const HeatCapacityPoint& point) {
  if (point.status != PointStatus::ok) return true;
  if (point.cv_total != point.cv_standard + point.cv_correction) return false;
  if (!(point.cv_standard > 0.0)) return false;
  return point.relative_delta == -point.cv_correction / point.cv_standard;
}

double reduced_delta(double theta, double temperature) {
  if (!(theta > 0.0) || !(temperature > 0.0)) {
    throw DomainError("reduced_delta requires theta > 0 and T > 0 (theta=" + describe(theta) +
                      ", T=" + describe(temperature) + ")");
  }
  return theta / temperature;
}

ValidationReport validate(const EinsteinParams& params) {
  ValidationReport r;
  if (!(params.theta_E > 0.0)) r.violations.emplace_back("theta_E > 0");
  if (params.n_atoms < 1) r.violations.emplace_back("n_atoms >= 1");
  if (!(params.kb_gamma2 >= 0.0)) r.violations.emplace_back("kb_gamma2 >= 0");
  if (r.ok()) {
    r.b = params.b();
    if (*r.b > kPerturbativeLimit) {
      r.warnings.push_back("b = " + describe(*r.b) + " > " + describe(kPerturbativeLimit) +
                           " (perturbative regime violated)");
    }
  }
  return r;
}

ValidationReport validate(const DebyeParams& params) {
  ValidationReport r;
  if (!(params.theta_D > 0.0)) r.violations.emplace_back("theta_D > 0");
  if (params.n_atoms < 1) r.violations.emplace_back("n_atoms >= 1");
  if (!(params.kb_gamma2 >= 0.0)) r.violations.emplace_back("kb_gamma2 >= 0");
  if (!(params.amp_factor >= 0.0)) r.violations.emplace_back("amp_factor >= 0");
  if (r.ok()) {
    r.b = params.kb_gamma2 * params.theta_D;
    if (*r.b > kPerturbativeLimit) {
      r.warnings.push_back("kb_gamma2 * theta_D = " + describe(*r.b) +
                           " exceeds the perturbative limit");
    }
  }
  return r;
}

ValidationReport validate(const TemperatureGrid& grid) {
  ValidationReport r;
  if (!(grid.t_min > 0.0)) r.violations.emplace_back("t_min > 0");
  if (!(grid.t_max >= grid.t_min)) r.violations.emplace_back("t_max >= t_min");
  if (grid.n_points < 1) r.violations.emplace_back("n_points >= 1");
  if (!std::isfinite(grid.t_max)) r.violations.emplace_back("t_max finite");
  return r;
}

}  // namespace gupheat
