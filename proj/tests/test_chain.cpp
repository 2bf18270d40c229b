#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "gupheat/chain.hpp"
#include "oracles/reference.hpp"

using namespace gupheat;
using namespace gupheat::chain;

namespace {
ChainConfig linear_config() {
  ChainConfig c;
  c.gamma2 = 0.0;
  c.amplitude = 0.01;
  return c;
}
}  // namespace

TEST_CASE("config validation") {
  CHECK(validate(ChainConfig{}).ok());
  ChainConfig c;
  c.mode_index = 0;
  CHECK_FALSE(validate(c).ok());
  c.mode_index = 32;
  CHECK_FALSE(validate(c).ok());
  c = ChainConfig{};
  c.n_atoms = 4;
  CHECK_FALSE(validate(c).ok());
  c = ChainConfig{};
  c.n_periods = 4;
  CHECK_FALSE(validate(c).ok());
  c = ChainConfig{};
  c.gamma2 = 10.0;
  c.amplitude = 0.5;
  CHECK_FALSE(validate(c).ok());
  CHECK(c.time_step() == doctest::Approx(c.period() / 200.0));
  c.dt = 0.01;
  CHECK(c.time_step() == 0.01);
  CHECK(ChainConfig{}.omega_standard() == doctest::Approx(2.0 * std::sin(M_PI / 8.0)).epsilon(1e-15));
}

TEST_CASE("initial traveling wave") {
  const auto s = init_wave(linear_config());
  CHECK(s.displacements.size() == 64);
  CHECK(s.displacements.cwiseAbs().maxCoeff() == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(std::abs(s.velocities.sum()) < 1e-15);
  ChainConfig bad;
  bad.mode_index = 0;
  CHECK_THROWS_AS(init_wave(bad), DomainError);
}

TEST_CASE("accelerations") {
  ChainConfig c;
  c.gamma2 = 0.1;
  c.beta = 2.0;
  ChainState s{Eigen::VectorXd::Constant(64, 0.3), Eigen::VectorXd::Zero(64), 0.0};
  CHECK(acceleration(s, c).cwiseAbs().maxCoeff() == 0.0);

  s.displacements.setZero();
  s.displacements(5) = 0.1;
  const Eigen::VectorXd a = acceleration(s, c);
  CHECK(a(5) == doctest::Approx(-0.4));
  CHECK(a(4) == doctest::Approx(0.2));
  CHECK(a(6) == doctest::Approx(0.2));
  CHECK(a.sum() == doctest::Approx(0.0).scale(1.0));

  // wrap-around at the ends
  s.displacements.setZero();
  s.displacements(0) = 1.0;
  const Eigen::VectorXd w = periodic_laplacian(s.displacements);
  CHECK(w(63) == 1.0);
  CHECK(w(1) == 1.0);
  CHECK(w(0) == -2.0);

  s.velocities.setConstant(0.1);
  s.displacements(0) = 0.2;
  const Eigen::VectorXd g = acceleration(s, c);
  CHECK(g(1) == doctest::Approx(2.0 * 0.2 / (1.0 - 4.0 * 0.1 * 0.01)));

  s.velocities(7) = 2.0;
  try {
    acceleration(s, c);
    FAIL("expected regime error");
  } catch (const RegimeError& e) {
    CHECK(e.site() == 7);
  }
}

TEST_CASE("mode projection") {
  ChainConfig c = linear_config();
  const auto s = init_wave(c);
  const auto a = mode_amplitude(s.displacements, c.wavenumber());
  CHECK(std::abs(a) == doctest::Approx(0.005).epsilon(1e-12));
}

TEST_CASE("linear chain keeps its eigenmode and reproduces the lattice dispersion") {
  const auto traj = integrate(linear_config());
  const double a0 = std::abs(traj.mode_amplitudes.front());
  for (const auto& a : traj.mode_amplitudes) CHECK(std::abs(std::abs(a) / a0 - 1.0) < 1e-6);
  CHECK(traj.energy_drift() < 1e-6);
  CHECK(traj.momentum_drift() < 1e-12);

  for (long m = 1; m <= 16; ++m) {
    ChainConfig c = linear_config();
    c.mode_index = m;
    const auto r = run(c);
    CAPTURE(m);
    CHECK(std::abs(r.omega_measured - 2.0 * std::sin(M_PI * m / 64.0)) < 1e-6);
  }
}

TEST_CASE("dt halving shrinks the frequency error by about 16") {
  ChainConfig c = linear_config();
  c.dt = c.period() / 40.0;
  const double e1 = std::abs(run(c).omega_measured - c.omega_standard());
  c.dt /= 2.0;
  const double e2 = std::abs(run(c).omega_measured - c.omega_standard());
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("frequency measurement") {
  std::vector<double> t;
  std::vector<std::complex<double>> a;
  for (int i = 0; i <= 4000; ++i) {
    t.push_back(0.01 * i);
    a.push_back(std::polar(2.0, 1.5 * t.back() + 0.3));
  }
  CHECK(measure_frequency(t, a) == doctest::Approx(1.5).epsilon(1e-13));

  std::vector<std::complex<double>> fading = a;
  fading.back() *= 0.01;
  CHECK_THROWS_AS(measure_frequency(t, fading), MeasurementError);

  std::vector<double> short_t(t.begin(), t.begin() + 100);
  std::vector<std::complex<double>> short_a(a.begin(), a.begin() + 100);
  CHECK_THROWS_AS(measure_frequency(short_t, short_a), MeasurementError);
}

TEST_CASE("GUP chain: shift sign, size and scaling") {
  ChainConfig c;
  c.gamma2 = 1e-3;
  const std::vector<double> amps{0.05, 0.1, 0.2, 0.4};
  const auto scan = amplitude_scan(c, amps);
  REQUIRE(scan.exponent);
  CHECK_FALSE(scan.no_signal);
  CHECK(*scan.exponent == doctest::Approx(2.0).epsilon(0.05));
  for (const auto& r : scan.runs) {
    CAPTURE(r.amplitude);
    CHECK(r.shift > 0.0);
    CHECK(r.passes_drift_gate());
    const double oracle = static_cast<double>(ref::lindstedt_shift(1e-3L, r.amplitude, c.omega_standard()));
    CHECK(r.shift == doctest::Approx(oracle).epsilon(0.02));
  }

  ChainConfig d = c;
  d.amplitude = 0.2;
  const double s1 = run(d).shift;
  d.gamma2 = 2e-3;
  const double s2 = run(d).shift;
  CHECK(s2 / s1 == doctest::Approx(2.0).epsilon(0.05));

  d.gamma2 = 1e-3;
  const auto traj = integrate(d);
  CHECK(traj.momentum_drift() < 1e-12);
  CHECK(traj.energy_drift() < 1e-6);
}

TEST_CASE("a linear-chain scan has no signal") {
  ChainConfig c;
  c.gamma2 = 0.0;
  const std::vector<double> amps{0.05, 0.1, 0.2, 0.4};
  const auto scan = amplitude_scan(c, amps);
  CHECK(scan.no_signal);
  CHECK_FALSE(scan.exponent);
  for (const auto& r : scan.runs) CHECK(std::abs(r.shift) < 1e-6);

  CHECK_THROWS_AS(amplitude_scan(c, std::vector<double>{0.1, 0.2}), DomainError);
  CHECK_THROWS_AS(amplitude_scan(c, std::vector<double>{0.1, 0.2, 0.3}), DomainError);
}

TEST_CASE("runs are deterministic") {
  ChainConfig c;
  c.gamma2 = 1e-3;
  c.amplitude = 0.3;
  const auto a = run(c);
  const auto b = run(c);
  CHECK(a.omega_measured == b.omega_measured);
  CHECK(a.energy_drift == b.energy_drift);
}
