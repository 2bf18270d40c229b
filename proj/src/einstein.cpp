#include "gupheat/einstein.hpp"

#include <cmath>

#include "gupheat/series.hpp"

namespace gupheat::einstein {

namespace {

void require_positive_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw DomainError("delta must be finite and > 0");
  }
}

void require_nonnegative_b(double b) {
  if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("b must be finite and >= 0");
}

}  // namespace

double mean_energy(double delta, double b) {
  require_positive_delta(delta);
  require_nonnegative_b(b);
  const double standard = 0.5 + 1.0 / std::expm1(delta);
  if (b == 0.0) return standard;
  const double series = power_sum_exp(1, delta) - delta * power_sum_exp(2, delta);
  return standard + b * (0.25 + series);
}

double cv_standard(double delta) {
  require_positive_delta(delta);
  if (delta > kUnderflowGuard) return delta * delta * std::exp(-delta);
  // delta^2 e^delta / (e^delta - 1)^2 rewritten in e^-delta so nothing overflows.
  const double q = std::exp(-delta);
  const double denom = -std::expm1(-delta);
  return delta * delta * q / (denom * denom);
}

double cv_correction(double delta, double b) {
  require_positive_delta(delta);
  require_nonnegative_b(b);
  if (b == 0.0) return 0.0;
  return b * delta * delta * delta * einstein_inner_sum(delta);
}

AsymptoticPair cv_low_T_asymptotic(double delta, double b) {
  require_positive_delta(delta);
  require_nonnegative_b(b);
  AsymptoticPair out;
  out.standard = delta * delta * std::exp(-delta);
  if (b > 0.0) out.correction = -b * delta * delta * delta * power_sum_exp(3, delta);
  return out;
}

AsymptoticPair cv_high_T_formal(double delta, double b, std::size_t j_max) {
  require_positive_delta(delta);
  require_nonnegative_b(b);
  if (j_max < 1) throw DomainError("j_max must be >= 1");
  AsymptoticPair out{1.0, 0.0};
  if (b == 0.0) return out;
  double sum = 0.0;
  for (std::size_t j = 1; j <= j_max; ++j) {
    const double jd = static_cast<double>(j);
    sum += (2.0 - delta * (2.0 * jd + 1.0)) * jd * jd;
  }
  out.correction = b * delta * delta * sum;
  return out;
}

double relative_change(double delta, double b) {
  const double standard = cv_standard(delta);
  if (!(standard > 0.0)) {
    throw NumericalError("cv_standard underflows at delta = " + std::to_string(delta) +
                         "; relative change undefined");
  }
  return -cv_correction(delta, b) / standard;
}

HeatCapacityPoint point(const EinsteinParams& params, double temperature) {
  try {
    const double delta = reduced_delta(params.theta_E, temperature);
    const double b = params.b();
    return HeatCapacityPoint::from_parts(temperature, cv_standard(delta),
                                         cv_correction(delta, b));
  } catch (const DomainError& e) {
    return HeatCapacityPoint::failed(temperature, PointStatus::domain_error, e.what());
  } catch (const NumericalError& e) {
    return HeatCapacityPoint::failed(temperature, PointStatus::numerical_error, e.what());
  }
}

std::vector<HeatCapacityPoint> curve(const EinsteinParams& params, const TemperatureGrid& grid) {
  const auto report = validate(params);
  if (!report.ok()) throw DomainError("invalid Einstein parameters: " + report.violations.front());

  std::vector<HeatCapacityPoint> out;
  const auto temps = grid.temperatures();
  out.reserve(temps.size());
  for (double t : temps) out.push_back(point(params, t));
  return out;
}

}  // namespace gupheat::einstein
