#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gupheat {

/// Thrown when an input lies outside the domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a numerical procedure fails to reach its target.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace constants {
// CODATA 2018 exact values. Only used when converting SI input into the
// dimensionless groups the kernels work with.
inline constexpr double k_B = 1.380649e-23;      // J/K
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double pi = 3.141592653589793238462643383279502884;
}  // namespace constants

/// Above this value of b the first-order spectrum is not trustworthy.
inline constexpr double kPerturbativeLimit = 0.1;

struct EinsteinParams {
  double theta_E = 240.0;  // K
  long n_atoms = 1;
  double kb_gamma2 = 0.0;  // 1/K, the combination k_B * gamma_EM^2

  /// Dimensionless GUP strength b = hbar*omega*gamma^2 = kb_gamma2 * theta_E.
  double b() const { return kb_gamma2 * theta_E; }
};

struct DebyeParams {
  double theta_D = 343.0;  // K
  long n_atoms = 1;
  double kb_gamma2 = 0.0;   // 1/K
  double amp_factor = 0.0;  // 1/K^2, gamma^2 u0^2 k_B^2 / hbar^2
};

enum class Spacing { linear, logarithmic };

struct TemperatureGrid {
  double t_min = 1.0;
  double t_max = 700.0;
  std::size_t n_points = 700;
  Spacing spacing = Spacing::linear;

  /// Grid temperatures in ascending order. Throws DomainError on an invalid grid.
  std::vector<double> temperatures() const;
};

enum class PointStatus { ok, limit, domain_error, numerical_error, undefined };

std::string_view to_string(PointStatus status);

/// One temperature sample. Values are normalized (per 3Nk_B or 9Nk_B,
/// depending on the pipeline).
struct HeatCapacityPoint {
  double temperature = 0.0;
  double cv_standard = 0.0;
  double cv_correction = 0.0;
  double cv_total = 0.0;
  double relative_delta = 0.0;
  PointStatus status = PointStatus::ok;
  std::string detail;

  /// Builds a point from its two independent parts; the derived fields are
  /// filled so that both field invariants hold.
  static HeatCapacityPoint from_parts(double temperature, double standard,
                                      double correction);
  /// A flagged point whose values are NaN.
  static HeatCapacityPoint failed(double temperature, PointStatus status,
                                  std::string detail);
  /// The synthesized T -> 0 row: heat capacities vanish, relative change unset.
  static HeatCapacityPoint zero_temperature_limit();

  HeatCapacityPoint scaled(double factor) const;
};

/// Checks cv_total == standard + correction and the relative-change identity.
/// Flagged points (non-ok status) trivially pass.
bool satisfies_invariants(const HeatCapacityPoint& point);

/// delta = theta / T.
double reduced_delta(double theta, double temperature);

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  std::optional<double> b;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const EinsteinParams& params);
ValidationReport validate(const DebyeParams& params);
ValidationReport validate(const TemperatureGrid& grid);

}  // namespace gupheat
