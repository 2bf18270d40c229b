#pragma once

// Debye-model pipeline with the GUP-modified dispersion relation and density
// of states. Heat capacities are normalized by 9Nk_B unless noted.

#include <cstddef>
#include <vector>

#include "gupheat/core.hpp"
#include "gupheat/quadrature.hpp"

namespace gupheat::debye {

struct DispersionPoint {
  double wavenumber = 0.0;
  double omega_standard = 0.0;
  double omega_gup = 0.0;
};

struct AsymptoticPair {
  double standard = 0.0;
  double correction = 0.0;
};

enum class Normalization { per_9NkB, per_3NkB };

/// 4 pi^4 / 15, the y_D -> infinity value of the Debye integral.
inline constexpr double kDebyeIntegralInfinity =
    4.0 * constants::pi * constants::pi * constants::pi * constants::pi / 15.0;

/// Integrands are treated as zero beyond this y (they are below 1e-300 there).
inline constexpr double kIntegrandCutoff = 750.0;

/// Nearest-neighbour chain, lattice constant 1: 2 sqrt(beta) |sin(k/2)|.
double dispersion_lattice_standard(double k, double beta);

/// Non-negative root of omega + g omega^3 = v_s k.
double dispersion_continuum_gup(double k, double v_s, double g);

DispersionPoint dispersion_point(double k, double v_s, double g);

/// prefactor * omega^2 (1 + 10 g2 omega^2), prefactor = V / (2 pi^2 v_s^3).
double density_of_states(double omega, double prefactor, double g2);

/// Closed-form integral of density_of_states over [0, omega_D].
double mode_count(double omega_D, double prefactor, double g2);

/// y^4 e^y / (e^y - 1)^2 with Taylor and exponential-tail forms at the ends.
double debye_integrand_standard(double y, double y_small_threshold = 1e-3);

/// y^5 * debye_inner_sum(y), with the small-y expansion -2y^2 - y^6/40.
double debye_integrand_correction(double y, double y_small_threshold = 1e-3);

/// integral_0^{y_max} debye_integrand_standard(y) dy.
double debye_integral(double y_max, const QuadratureConfig& quad = {});

double cv_standard(double temperature, const DebyeParams& params, const QuadratureConfig& quad = {});
double cv_correction(double temperature, const DebyeParams& params,
                     const QuadratureConfig& quad = {});

// Term-wise high-temperature expansion; its series diverges so it is summed
// to j_max. Diagnostic only.
AsymptoticPair cv_high_T_formal(double temperature, const DebyeParams& params, std::size_t j_max);

/// T << theta_D limits: (4 pi^4/15)(T/theta_D)^3 and the T^3 / T^4 GUP terms.
AsymptoticPair cv_low_T(double temperature, const DebyeParams& params);

HeatCapacityPoint point(const DebyeParams& params, double temperature,
                        const QuadratureConfig& quad = {},
                        Normalization normalization = Normalization::per_9NkB);

std::vector<HeatCapacityPoint> curve(const DebyeParams& params, const TemperatureGrid& grid,
                                     const QuadratureConfig& quad = {},
                                     Normalization normalization = Normalization::per_9NkB);

}  // namespace gupheat::debye
