#pragma once

#include <cstddef>
#include <vector>

#include "gupheat/core.hpp"

namespace gupheat::einstein {

/// Beyond this reduced temperature delta = theta_E / T the standard heat
/// capacity switches to delta^2 exp(-delta).
inline constexpr double kUnderflowGuard = 700.0;

struct AsymptoticPair {
  double standard = 0.0;
  double correction = 0.0;
};

/// Mean oscillator energy in units of hbar*omega, to first order in b.
double mean_energy(double delta, double b);

/// C_v / 3Nk_B for the unmodified Einstein solid.
double cv_standard(double delta);

/// First-order GUP correction, C'_v / 3Nk_B = b delta^3 einstein_inner_sum(delta).
double cv_correction(double delta, double b);

/// Low-temperature forms (e^delta - 1 ~ e^delta).
AsymptoticPair cv_low_T_asymptotic(double delta, double b);

// The high-temperature correction is a term-wise expansion whose series
// diverges; this sums it to j_max and is only meant as a diagnostic.
AsymptoticPair cv_high_T_formal(double delta, double b, std::size_t j_max);

/// (C_v - C_v^GUP) / C_v. Throws NumericalError if C_v underflows to zero.
double relative_change(double delta, double b);

/// Heat capacity curve over a temperature grid, normalized by 3Nk_B. A
/// failing temperature is flagged in its own point; the curve carries on.
std::vector<HeatCapacityPoint> curve(const EinsteinParams& params, const TemperatureGrid& grid);

/// Single-temperature version of curve().
HeatCapacityPoint point(const EinsteinParams& params, double temperature);

}  // namespace gupheat::einstein
