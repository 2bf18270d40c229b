#pragma once

// Brute-force canonical-ensemble thermodynamics over the GUP oscillator
// spectrum E_n = (n + 1/2) + (b/4)(1 + 2n + 2n^2), in units of hbar*omega.
// Independent of the closed-form einstein kernels; used to check them.

#include <cstddef>

#include <Eigen/Core>

#include "gupheat/core.hpp"

namespace gupheat::oracle {

struct OracleConfig {
  double weight_cutoff = 1e-18;
  std::size_t max_levels = 1'000'000;
};

/// Raised when the Boltzmann weights have not dropped below the cutoff after
/// max_levels levels.
class TruncationError : public NumericalError {
 public:
  TruncationError(std::size_t levels_built, double last_weight);
  std::size_t levels_built() const { return levels_built_; }
  double last_weight() const { return last_weight_; }

 private:
  std::size_t levels_built_;
  double last_weight_;
};

/// Levels n = 0..size()-1. Weights are exp(-delta (E_n - E_0)).
struct OracleSpectrum {
  Eigen::ArrayXd energies;
  Eigen::ArrayXd weights;
  double b = 0.0;
  /// max over retained n of (b/4)(1 + 2n + 2n^2) / (n + 1/2).
  double max_relative_correction = 0.0;
  bool perturbative_warning = false;

  Eigen::Index size() const { return energies.size(); }
  double partition_function() const { return weights.sum(); }
  Eigen::ArrayXd probabilities() const { return weights / partition_function(); }
};

double level_energy(std::size_t n, double b);

OracleSpectrum build_spectrum(double delta, double b, const OracleConfig& config = {});

/// <E> in units of hbar*omega.
double oracle_mean_energy(double delta, double b, const OracleConfig& config = {});
double oracle_mean_energy(const OracleSpectrum& spectrum);

/// Heat capacity per mode in units of k_B, delta^2 (<E^2> - <E>^2).
double oracle_cv(double delta, double b, const OracleConfig& config = {});
double oracle_cv(const OracleSpectrum& spectrum, double delta);

}  // namespace gupheat::oracle
