#include "gupheat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace gupheat::oracle {

TruncationError::TruncationError(std::size_t levels_built, double last_weight)
    : NumericalError("spectrum truncated at max_levels = " + std::to_string(levels_built) +
                     " with last weight " + std::to_string(last_weight) +
                     " above the cutoff"),
      levels_built_(levels_built),
      last_weight_(last_weight) {}

double level_energy(std::size_t n, double b) {
  const double nd = static_cast<double>(n);
  return (nd + 0.5) + 0.25 * b * (1.0 + 2.0 * nd + 2.0 * nd * nd);
}

OracleSpectrum build_spectrum(double delta, double b, const OracleConfig& config) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be finite and > 0");
  if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("b must be finite and >= 0");
  if (!(config.weight_cutoff > 0.0 && config.weight_cutoff < 1.0)) {
    throw DomainError("weight_cutoff must lie in (0, 1)");
  }
  if (config.max_levels < 2) throw DomainError("max_levels must be >= 2");

  const double ground = level_energy(0, b);
  std::vector<double> energies;
  std::vector<double> weights;
  double max_rel = 0.0;

  for (std::size_t n = 0;; ++n) {
    const double e = level_energy(n, b);
    const double w = std::exp(-delta * (e - ground));
    if (n > 0 && w < config.weight_cutoff) break;
    if (n == config.max_levels) throw TruncationError(n, weights.back());
    energies.push_back(e);
    weights.push_back(w);
    const double nd = static_cast<double>(n);
    max_rel = std::max(max_rel, 0.25 * b * (1.0 + 2.0 * nd + 2.0 * nd * nd) / (nd + 0.5));
  }

  OracleSpectrum s;
  s.energies = Eigen::Map<const Eigen::ArrayXd>(energies.data(), static_cast<Eigen::Index>(energies.size()));
  s.weights = Eigen::Map<const Eigen::ArrayXd>(weights.data(), static_cast<Eigen::Index>(weights.size()));
  s.b = b;
  s.max_relative_correction = max_rel;
  s.perturbative_warning = max_rel > kPerturbativeLimit;
  return s;
}

double oracle_mean_energy(const OracleSpectrum& spectrum) {
  return (spectrum.weights * spectrum.energies).sum() / spectrum.partition_function();
}

double oracle_mean_energy(double delta, double b, const OracleConfig& config) {
  return oracle_mean_energy(build_spectrum(delta, b, config));
}

double oracle_cv(const OracleSpectrum& spectrum, double delta) {
  // Work with excitation energies so the variance of a sharply peaked
  // distribution keeps its relative precision.
  const Eigen::ArrayXd excitation = spectrum.energies - spectrum.energies(0);
  const double z = spectrum.partition_function();
  const double mean = (spectrum.weights * excitation).sum() / z;
  const double variance = (spectrum.weights * (excitation - mean).square()).sum() / z;
  return delta * delta * variance;
}

double oracle_cv(double delta, double b, const OracleConfig& config) {
  return oracle_cv(build_spectrum(delta, b, config), delta);
}

}  // namespace gupheat::oracle
