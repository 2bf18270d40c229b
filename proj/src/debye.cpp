#include "gupheat/debye.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gupheat/series.hpp"

namespace gupheat::debye {

namespace {

constexpr double kPi4 = constants::pi * constants::pi * constants::pi * constants::pi;
constexpr int kMaxNewtonIterations = 100;

void require_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be finite and > 0");
  }
}

void require_params(const DebyeParams& params) {
  const auto report = validate(params);
  if (!report.ok()) throw DomainError("invalid Debye parameters: " + report.violations.front());
}

}  // namespace

double dispersion_lattice_standard(double k, double beta) {
  if (!(beta > 0.0)) throw DomainError("beta must be > 0");
  return 2.0 * std::sqrt(beta) * std::abs(std::sin(0.5 * k));
}

double dispersion_continuum_gup(double k, double v_s, double g) {
  if (!(k >= 0.0)) throw DomainError("k must be >= 0");
  if (!(v_s > 0.0)) throw DomainError("v_s must be > 0");
  if (!(g >= 0.0)) throw DomainError("g must be >= 0");

  const double c = v_s * k;
  if (c == 0.0 || g == 0.0) return c;

  const double smallness = g * c * c;
  double omega = c * (1.0 - smallness);  // first-order root
  // The next term is +3 g^2 c^5, so the perturbative form is already exact to
  // double precision here.
  if (smallness < 1e-7) return omega;
  if (!(omega > 0.0)) omega = c;

  // h(w) = w + g w^3 - c is increasing and convex on [0, c]; Newton with a
  // bisection fallback inside the bracket [lo, hi].
  double lo = 0.0;
  double hi = c;
  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    const double h = omega + g * omega * omega * omega - c;
    if (h > 0.0) hi = omega; else lo = omega;
    const double dh = 1.0 + 3.0 * g * omega * omega;
    double next = omega - h / dh;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - omega) <= 4.0 * std::numeric_limits<double>::epsilon() * next) {
      return next;
    }
    omega = next;
  }
  throw NumericalError("dispersion root did not converge in 100 iterations");
}

DispersionPoint dispersion_point(double k, double v_s, double g) {
  return {k, v_s * k, dispersion_continuum_gup(k, v_s, g)};
}

double density_of_states(double omega, double prefactor, double g2) {
  if (!(omega >= 0.0)) throw DomainError("omega must be >= 0");
  if (!(prefactor > 0.0)) throw DomainError("prefactor must be > 0");
  if (!(g2 >= 0.0)) throw DomainError("g2 must be >= 0");
  const double w2 = omega * omega;
  return prefactor * w2 * (1.0 + 10.0 * g2 * w2);
}

double mode_count(double omega_D, double prefactor, double g2) {
  if (!(omega_D >= 0.0)) throw DomainError("omega_D must be >= 0");
  const double w3 = omega_D * omega_D * omega_D;
  return prefactor * w3 / 3.0 * (1.0 + 6.0 * g2 * omega_D * omega_D);
}

double debye_integrand_standard(double y, double y_small_threshold) {
  if (!(y >= 0.0)) throw DomainError("y must be >= 0");
  const double y2 = y * y;
  if (y < y_small_threshold) return y2 * (1.0 - y2 / 12.0 + y2 * y2 / 240.0);
  if (y > 500.0) return y2 * y2 * std::exp(-y);
  const double q = std::exp(-y);
  const double denom = -std::expm1(-y);
  return y2 * y2 * q / (denom * denom);
}

double debye_integrand_correction(double y, double y_small_threshold) {
  if (!(y >= 0.0)) throw DomainError("y must be >= 0");
  const double y2 = y * y;
  if (y < std::max(y_small_threshold, kMinSeriesArgument)) {
    return -2.0 * y2 - y2 * y2 * y2 / 40.0;
  }
  return y2 * y2 * y * debye_inner_sum(y);
}

double debye_integral(double y_max, const QuadratureConfig& quad) {
  if (!(y_max >= 0.0)) throw DomainError("y_max must be >= 0");
  const double upper = std::min(y_max, kIntegrandCutoff);
  const double threshold = quad.y_small_threshold;
  return integrate([threshold](double y) { return debye_integrand_standard(y, threshold); }, 0.0,
                   upper, quad);
}

double cv_standard(double temperature, const DebyeParams& params, const QuadratureConfig& quad) {
  require_temperature(temperature);
  require_params(params);
  const double r = temperature / params.theta_D;
  return r * r * r * debye_integral(1.0 / r, quad);
}

double cv_correction(double temperature, const DebyeParams& params, const QuadratureConfig& quad) {
  require_temperature(temperature);
  require_params(params);
  const double theta = params.theta_D;
  const double r = temperature / theta;
  const double upper = std::min(theta / temperature, kIntegrandCutoff);
  const double threshold = quad.y_small_threshold;

  double out = 0.0;
  if (params.amp_factor > 0.0) {
    const double r2 = r * r;
    const double integral = integrate(
        [=](double y) { return (-6.0 + 10.0 * r2 * y * y) * debye_integrand_standard(y, threshold); },
        0.0, upper, quad);
    out += params.amp_factor * temperature * temperature * temperature / theta * integral;
  }
  if (params.kb_gamma2 > 0.0) {
    const double integral = integrate(
        [=](double y) { return debye_integrand_correction(y, threshold); }, 0.0, upper, quad);
    out += params.kb_gamma2 * temperature * r * r * r * integral;
  }
  return out;
}

AsymptoticPair cv_high_T_formal(double temperature, const DebyeParams& params, std::size_t j_max) {
  require_temperature(temperature);
  require_params(params);
  if (j_max < 1) throw DomainError("j_max must be >= 1");

  AsymptoticPair out{1.0 / 3.0, 0.0};
  const double theta = params.theta_D;
  const double y_d = theta / temperature;
  const double theta3 = theta * theta * theta;
  double sum = 0.0;
  for (std::size_t j = 1; j <= j_max; ++j) {
    const double jd = static_cast<double>(j);
    sum += (1.0 / 3.0 - 3.0 * jd / 7.0 * y_d) * jd * jd;
  }
  out.correction = params.amp_factor * theta3 / temperature +
                   params.kb_gamma2 * theta3 / (temperature * temperature) * sum;
  return out;
}

AsymptoticPair cv_low_T(double temperature, const DebyeParams& params) {
  require_temperature(temperature);
  require_params(params);
  const double theta = params.theta_D;
  const double r = temperature / theta;
  AsymptoticPair out;
  out.standard = kDebyeIntegralInfinity * r * r * r;
  out.correction = -8.0 * (params.amp_factor * kPi4 / 5.0 * temperature * temperature * r +
                           params.kb_gamma2 * 2.0 * kPi4 / 3.0 * temperature * r * r * r);
  return out;
}

HeatCapacityPoint point(const DebyeParams& params, double temperature,
                        const QuadratureConfig& quad, Normalization normalization) {
  HeatCapacityPoint p;
  try {
    p = HeatCapacityPoint::from_parts(temperature, cv_standard(temperature, params, quad),
                                      cv_correction(temperature, params, quad));
  } catch (const DomainError& e) {
    return HeatCapacityPoint::failed(temperature, PointStatus::domain_error, e.what());
  } catch (const NumericalError& e) {
    return HeatCapacityPoint::failed(temperature, PointStatus::numerical_error, e.what());
  }
  // C / 3Nk_B = 3 * C / 9Nk_B.
  return normalization == Normalization::per_3NkB ? p.scaled(3.0) : p;
}

std::vector<HeatCapacityPoint> curve(const DebyeParams& params, const TemperatureGrid& grid,
                                     const QuadratureConfig& quad, Normalization normalization) {
  require_params(params);
  std::vector<HeatCapacityPoint> out;
  const auto temps = grid.temperatures();
  out.reserve(temps.size());
  for (double t : temps) out.push_back(point(params, t, quad, normalization));
  return out;
}

}  // namespace gupheat::debye
