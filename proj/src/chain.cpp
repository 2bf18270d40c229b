#include "gupheat/chain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gupheat/fit.hpp"

namespace gupheat::chain {

namespace {

constexpr double kTwoPi = 2.0 * constants::pi;
constexpr std::size_t kMinPeriods = 5;

std::string site_message(std::size_t site, double denominator) {
  std::ostringstream os;
  os << "GUP term too large: 1 - 4 gamma2 u'^2 = " << denominator << " at site " << site;
  return os.str();
}

std::string step_message(std::size_t step, const std::string& what) {
  std::ostringstream os;
  os << "integration failed at step " << step << ": " << what;
  return os.str();
}

struct Derivative {
  Eigen::VectorXd du;
  Eigen::VectorXd dv;
};

Derivative rates(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const ChainConfig& config) {
  ChainState s{u, v, 0.0};
  return {v, acceleration(s, config)};
}

void rk4_step(ChainState& state, double dt, const ChainConfig& config) {
  const Eigen::VectorXd& u = state.displacements;
  const Eigen::VectorXd& v = state.velocities;
  const Derivative k1 = rates(u, v, config);
  const Derivative k2 = rates(u + 0.5 * dt * k1.du, v + 0.5 * dt * k1.dv, config);
  const Derivative k3 = rates(u + 0.5 * dt * k2.du, v + 0.5 * dt * k2.dv, config);
  const Derivative k4 = rates(u + dt * k3.du, v + dt * k3.dv, config);
  state.displacements += dt / 6.0 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
  state.velocities += dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  state.time += dt;
}

}  // namespace

double ChainConfig::wavenumber() const {
  return kTwoPi * static_cast<double>(mode_index) / static_cast<double>(n_atoms);
}

double ChainConfig::omega_standard() const {
  return 2.0 * std::sqrt(beta) * std::sin(0.5 * wavenumber());
}

double ChainConfig::period() const { return kTwoPi / omega_standard(); }

double ChainConfig::time_step() const { return dt > 0.0 ? dt : period() / kStepsPerPeriod; }

ValidationReport validate(const ChainConfig& config) {
  ValidationReport r;
  if (config.n_atoms < 8) r.violations.emplace_back("n_atoms >= 8");
  if (!(config.beta > 0.0)) r.violations.emplace_back("beta > 0");
  if (!(config.gamma2 >= 0.0)) r.violations.emplace_back("gamma2 >= 0");
  if (!(config.amplitude > 0.0)) r.violations.emplace_back("amplitude > 0");
  if (config.mode_index < 1 || 2 * config.mode_index >= static_cast<long>(config.n_atoms)) {
    r.violations.emplace_back("1 <= mode_index < n_atoms / 2");
  }
  if (!(config.dt >= 0.0)) r.violations.emplace_back("dt > 0 (or 0 for the default)");
  if (config.n_periods < kMinPeriods) r.violations.emplace_back("n_periods >= 5");
  if (!r.ok()) return r;

  const double v0 = config.amplitude * config.omega_standard();
  const double smallness = 4.0 * config.gamma2 * v0 * v0;
  if (!(smallness < 0.5)) {
    std::ostringstream os;
    os << "4 gamma2 (amplitude omega0)^2 < 0.5 (got " << smallness << ")";
    r.violations.push_back(os.str());
  }
  return r;
}

RegimeError::RegimeError(std::size_t site, double denominator)
    : NumericalError(site_message(site, denominator)), site_(site) {}

IntegrationError::IntegrationError(std::size_t step, const std::string& what)
    : NumericalError(step_message(step, what)), step_(step) {}

ChainState init_wave(const ChainConfig& config) {
  const auto report = validate(config);
  if (!report.ok()) throw DomainError("invalid chain config: " + report.violations.front());

  const auto n = static_cast<Eigen::Index>(config.n_atoms);
  const Eigen::ArrayXd phase =
      config.wavenumber() * Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
  ChainState s;
  s.displacements = config.amplitude * phase.cos().matrix();
  s.velocities = config.amplitude * config.omega_standard() * phase.sin().matrix();
  return s;
}

Eigen::VectorXd periodic_laplacian(const Eigen::VectorXd& u) {
  const Eigen::Index n = u.size();
  Eigen::VectorXd next(n);
  Eigen::VectorXd prev(n);
  next << u.tail(n - 1), u(0);
  prev << u(n - 1), u.head(n - 1);
  return next + prev - 2.0 * u;
}

Eigen::VectorXd acceleration(const ChainState& state, const ChainConfig& config) {
  const Eigen::VectorXd force = config.beta * periodic_laplacian(state.displacements);
  if (config.gamma2 == 0.0) return force;

  const Eigen::ArrayXd denom = 1.0 - 4.0 * config.gamma2 * state.velocities.array().square();
  Eigen::Index worst = 0;
  if (!(denom.minCoeff(&worst) > 0.0)) {
    throw RegimeError(static_cast<std::size_t>(worst), denom(worst));
  }
  return (force.array() / denom).matrix();
}

double energy(const ChainState& state, const ChainConfig& config) {
  const Eigen::ArrayXd v = state.velocities.array();
  const Eigen::ArrayXd p = v * (1.0 - (4.0 / 3.0) * config.gamma2 * v.square());
  const Eigen::VectorXd& u = state.displacements;
  const Eigen::Index n = u.size();
  Eigen::VectorXd next(n);
  next << u.tail(n - 1), u(0);
  const double potential = 0.5 * config.beta * (next - u).squaredNorm();
  const double kinetic = 0.5 * p.square().sum() + config.gamma2 / 3.0 * p.square().square().sum();
  return kinetic + potential;
}

double momentum(const ChainState& state) { return state.velocities.sum(); }

std::complex<double> mode_amplitude(const Eigen::VectorXd& displacements, double k) {
  std::complex<double> acc{0.0, 0.0};
  for (Eigen::Index s = 0; s < displacements.size(); ++s) {
    acc += displacements(s) * std::polar(1.0, -k * static_cast<double>(s));
  }
  return acc / static_cast<double>(displacements.size());
}

double Trajectory::energy_drift() const {
  if (energies.empty()) return 0.0;
  const double h0 = energies.front();
  double worst = 0.0;
  for (double h : energies) worst = std::max(worst, std::abs(h - h0));
  return h0 != 0.0 ? worst / std::abs(h0) : worst;
}

double Trajectory::momentum_drift() const {
  if (momenta.empty()) return 0.0;
  double worst = 0.0;
  for (double p : momenta) worst = std::max(worst, std::abs(p - momenta.front()));
  return worst;
}

Trajectory integrate(const ChainConfig& config) {
  ChainState state = init_wave(config);
  const double dt = config.time_step();
  const double duration = static_cast<double>(config.n_periods) * config.period();
  const auto n_steps = static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
  const double k = config.wavenumber();

  // Basis for the mode projection, reused at every step.
  const auto n = static_cast<Eigen::Index>(config.n_atoms);
  Eigen::VectorXcd basis(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    basis(s) = std::polar(1.0 / static_cast<double>(n), -k * static_cast<double>(s));
  }

  Trajectory traj;
  traj.times.reserve(n_steps + 1);
  traj.mode_amplitudes.reserve(n_steps + 1);
  traj.energies.reserve(n_steps + 1);
  traj.momenta.reserve(n_steps + 1);
  auto record = [&] {
    traj.times.push_back(state.time);
    traj.mode_amplitudes.push_back(
        basis.cwiseProduct(state.displacements.cast<std::complex<double>>()).sum());
    traj.energies.push_back(energy(state, config));
    traj.momenta.push_back(momentum(state));
  };

  record();
  for (std::size_t step = 1; step <= n_steps; ++step) {
    try {
      rk4_step(state, dt, config);
    } catch (const RegimeError& e) {
      throw IntegrationError(step, e.what());
    }
    // Recompute the clock from the step count to avoid accumulated rounding.
    state.time = static_cast<double>(step) * dt;
    if (!state.finite()) throw IntegrationError(step, "non-finite state");
    record();
  }
  traj.final_state = state;
  return traj;
}

double measure_frequency(std::span<const double> times,
                         std::span<const std::complex<double>> amplitudes) {
  if (times.size() != amplitudes.size() || times.size() < 3) {
    throw MeasurementError("measure_frequency needs matching series of >= 3 samples");
  }
  const double a0 = std::abs(amplitudes.front());
  std::vector<double> phase(times.size());
  double offset = 0.0;
  double previous = std::arg(amplitudes.front());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    if (std::abs(amplitudes[i]) < 0.1 * a0 || a0 == 0.0) {
      throw MeasurementError("mode amplitude collapsed below 10% of its initial value");
    }
    const double raw = std::arg(amplitudes[i]);
    double jump = raw - previous;
    if (jump > constants::pi) offset -= kTwoPi;
    if (jump < -constants::pi) offset += kTwoPi;
    previous = raw;
    phase[i] = raw + offset;
  }
  const double rate = std::abs(fit_slope(times, phase));
  const double span = times.back() - times.front();
  if (rate * span < kTwoPi * static_cast<double>(kMinPeriods) * (1.0 - 1e-9)) {
    throw MeasurementError("trajectory spans fewer than 5 oscillation periods");
  }
  return rate;
}

double measure_frequency(const Trajectory& trajectory) {
  return measure_frequency(trajectory.times, trajectory.mode_amplitudes);
}

ChainResult run(const ChainConfig& config) {
  const Trajectory traj = integrate(config);
  ChainResult r;
  r.amplitude = config.amplitude;
  r.omega_standard = config.omega_standard();
  r.omega_measured = measure_frequency(traj);
  r.shift = (r.omega_measured - r.omega_standard) / r.omega_standard;
  r.energy_drift = traj.energy_drift();
  return r;
}

ScanResult summarize_scan(std::vector<ChainResult> runs) {
  ScanResult out;
  out.runs = std::move(runs);
  double largest = 0.0;
  for (const auto& r : out.runs) largest = std::max(largest, std::abs(r.shift));
  if (largest < kNoSignalThreshold) {
    out.no_signal = true;
    return out;
  }
  std::vector<double> log_a;
  std::vector<double> log_s;
  for (const auto& r : out.runs) {
    if (r.shift == 0.0) continue;
    log_a.push_back(std::log(r.amplitude));
    log_s.push_back(std::log(std::abs(r.shift)));
  }
  if (log_a.size() >= 2) out.exponent = fit_slope(log_a, log_s);
  return out;
}

ScanResult amplitude_scan(const ChainConfig& base, std::span<const double> amplitudes) {
  if (amplitudes.size() < 3) throw DomainError("amplitude scan needs >= 3 amplitudes");
  const auto [lo, hi] = std::minmax_element(amplitudes.begin(), amplitudes.end());
  if (!(*lo > 0.0)) throw DomainError("amplitudes must be > 0");
  if (!(*hi >= 4.0 * *lo)) throw DomainError("amplitudes must span at least a factor of 4");

  ScanResult out;
  for (double a : amplitudes) {
    ChainConfig cfg = base;
    cfg.amplitude = a;
    try {
      out.runs.push_back(run(cfg));
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "scan member with amplitude " << a << " failed: " << e.what();
      throw NumericalError(os.str());
    }
  }

  return summarize_scan(std::move(out.runs));
}

}  // namespace gupheat::chain
