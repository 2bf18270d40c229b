#pragma once

// Periodic 1D mass-spring chain driven by the GUP-modified equation of motion
//   u''_s (1 - 4 gamma2 u'_s^2) = beta (u_{s+1} + u_{s-1} - 2 u_s),
// in reduced units (lattice constant 1, mass absorbed into coordinates).

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gupheat/core.hpp"

namespace gupheat::chain {

/// Maximum relative energy drift accepted for a run.
inline constexpr double kEnergyDriftGate = 1e-6;
/// Default number of time steps per unmodified period.
inline constexpr double kStepsPerPeriod = 200.0;
/// Scans whose largest |shift| is below this are reported as "no signal".
inline constexpr double kNoSignalThreshold = 1e-7;

struct ChainConfig {
  std::size_t n_atoms = 64;
  double beta = 1.0;
  double gamma2 = 0.0;
  double amplitude = 0.01;
  long mode_index = 8;
  double dt = 0.0;  // 0 selects period / 200
  std::size_t n_periods = 20;

  double wavenumber() const;
  /// 2 sqrt(beta) sin(k/2), the unmodified angular frequency of the mode.
  double omega_standard() const;
  double period() const;
  double time_step() const;
};

ValidationReport validate(const ChainConfig& config);

struct ChainState {
  Eigen::VectorXd displacements;
  Eigen::VectorXd velocities;
  double time = 0.0;

  bool finite() const { return displacements.allFinite() && velocities.allFinite(); }
};

/// Raised when 1 - 4 gamma2 u'^2 is no longer positive somewhere on the chain.
class RegimeError : public NumericalError {
 public:
  RegimeError(std::size_t site, double denominator);
  std::size_t site() const { return site_; }

 private:
  std::size_t site_;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(std::size_t step, const std::string& what);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class MeasurementError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Traveling wave u_s = u0 cos(k s), u'_s = u0 w0 sin(k s).
ChainState init_wave(const ChainConfig& config);

/// beta (u_{s+1} + u_{s-1} - 2u_s) with periodic indices.
Eigen::VectorXd periodic_laplacian(const Eigen::VectorXd& u);

Eigen::VectorXd acceleration(const ChainState& state, const ChainConfig& config);

/// sum_s p^2/2 + (beta/2)(u_{s+1} - u_s)^2 + (gamma2/3) p^4, with
/// p = u' (1 - (4/3) gamma2 u'^2).
double energy(const ChainState& state, const ChainConfig& config);

double momentum(const ChainState& state);

/// (1/S) sum_s u_s exp(-i k s).
std::complex<double> mode_amplitude(const Eigen::VectorXd& displacements, double k);

struct Trajectory {
  std::vector<double> times;
  std::vector<std::complex<double>> mode_amplitudes;
  std::vector<double> energies;
  std::vector<double> momenta;
  ChainState final_state;

  /// max_t |H(t) - H(0)| / |H(0)|.
  double energy_drift() const;
  double momentum_drift() const;
};

/// Classic RK4 at fixed step over n_periods unmodified periods.
Trajectory integrate(const ChainConfig& config);

/// Least-squares angular rate of the unwrapped phase of A(t), as a magnitude.
double measure_frequency(std::span<const double> times,
                         std::span<const std::complex<double>> amplitudes);
double measure_frequency(const Trajectory& trajectory);

struct ChainResult {
  double amplitude = 0.0;
  double omega_measured = 0.0;
  double omega_standard = 0.0;
  double shift = 0.0;  // (measured - standard) / standard
  double energy_drift = 0.0;

  bool passes_drift_gate() const { return energy_drift < kEnergyDriftGate; }
};

ChainResult run(const ChainConfig& config);

struct ScanResult {
  std::vector<ChainResult> runs;
  /// Slope of log|shift| against log(amplitude); empty when there is no signal.
  std::optional<double> exponent;
  bool no_signal = false;
};

/// Runs every amplitude with the rest of `base`. Needs >= 3 amplitudes
/// spanning at least a factor of 4.
ScanResult amplitude_scan(const ChainConfig& base, std::span<const double> amplitudes);

/// Fits the shift exponent over finished runs (what amplitude_scan does after
/// running its members).
ScanResult summarize_scan(std::vector<ChainResult> runs);

}  // namespace gupheat::chain
