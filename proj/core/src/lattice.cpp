#include "phasewave/lattice.hpp"

#include <cmath>
#include <numbers>

#include "phasewave/errors.hpp"

namespace phasewave {
namespace {

void check_dimensions(const LatticeConfig& cfg, const LatticeState& state) {
  const auto m = static_cast<size_t>(cfg.interior());
  if (state.u.size() != m || state.v.size() != m)
    fail(ErrorCode::DimensionMismatch, "state dimensions do not match lattice size");
}

}  // namespace

std::vector<double> bond_strains(const LatticeConfig& cfg, const LatticeState& state) {
  check_dimensions(cfg, state);
  const double inv_h1 = static_cast<double>(cfg.n);
  std::vector<double> strains(cfg.n);
  double prev = 0.0;
  for (int k = 0; k < cfg.interior(); ++k) {
    strains[k] = (state.u[k] - prev) * inv_h1;
    prev = state.u[k];
  }
  strains[cfg.n - 1] = (cfg.P - prev) * inv_h1;
  return strains;
}

Derivative rhs(const LatticeConfig& cfg, const LatticeState& state) {
  check_dimensions(cfg, state);
  const int m = cfg.interior();
  const double inv_h1 = static_cast<double>(cfg.n);
  const double damp = cfg.eps * inv_h1 * inv_h1;

  const std::vector<double> strains = bond_strains(cfg, state);
  std::vector<double> flux(cfg.n);
  for (int k = 0; k < cfg.n; ++k) flux[k] = cfg.stress.sigma(strains[k]);

  Derivative d;
  d.du = state.v;
  d.dv.resize(m);
  for (int k = 0; k < m; ++k) {
    const double v_left = k > 0 ? state.v[k - 1] : 0.0;
    const double v_right = k + 1 < m ? state.v[k + 1] : 0.0;
    d.dv[k] = inv_h1 * (flux[k + 1] - flux[k]) + damp * (v_right - 2.0 * state.v[k] + v_left);
  }
  return d;
}

double total_energy(const LatticeConfig& cfg, const LatticeState& state) {
  const std::vector<double> strains = bond_strains(cfg, state);
  double energy = 0.0;
  for (int k = 0; k < cfg.interior(); ++k)
    energy += 0.5 * state.v[k] * state.v[k] + cfg.stress.potential(strains[k]);
  energy += cfg.stress.potential(strains[cfg.n - 1]);
  return energy;
}

double dissipation_rate(const LatticeConfig& cfg, const LatticeState& state) {
  check_dimensions(cfg, state);
  if (cfg.eps == 0.0) return 0.0;
  const double inv_h1 = static_cast<double>(cfg.n);
  double sum = 0.0;
  double prev = 0.0;
  for (int k = 0; k < cfg.interior(); ++k) {
    const double d = state.v[k] - prev;
    sum += d * d;
    prev = state.v[k];
  }
  sum += prev * prev;  // closing bond, v_n = 0
  return -cfg.eps * inv_h1 * inv_h1 * sum;
}

LatticeState step(const LatticeConfig& cfg, const LatticeState& state, double dt) {
  if (dt < 0.0) fail(ErrorCode::RangeError, "negative time step");
  const int m = cfg.interior();

  LatticeState work = state;
  auto advance = [&](const Derivative& d, double scale) {
    for (int k = 0; k < m; ++k) {
      work.u[k] = state.u[k] + scale * d.du[k];
      work.v[k] = state.v[k] + scale * d.dv[k];
    }
  };

  const Derivative k1 = rhs(cfg, state);
  advance(k1, 0.5 * dt);
  const Derivative k2 = rhs(cfg, work);
  advance(k2, 0.5 * dt);
  const Derivative k3 = rhs(cfg, work);
  advance(k3, dt);
  const Derivative k4 = rhs(cfg, work);

  LatticeState next = state;
  next.t = state.t + dt;
  const double w = dt / 6.0;
  for (int k = 0; k < m; ++k) {
    next.u[k] += w * (k1.du[k] + 2.0 * (k2.du[k] + k3.du[k]) + k4.du[k]);
    next.v[k] += w * (k1.dv[k] + 2.0 * (k2.dv[k] + k3.dv[k]) + k4.dv[k]);
  }
  return next;
}

bool state_finite(const LatticeState& state) {
  for (double x : state.u)
    if (!std::isfinite(x)) return false;
  for (double x : state.v)
    if (!std::isfinite(x)) return false;
  return true;
}

Trajectory integrate(const LatticeConfig& cfg, const LatticeState& state0, double dt,
                     double t_end) {
  if (dt <= 0.0) fail(ErrorCode::RangeError, "time step must be positive");
  if (t_end < state0.t) fail(ErrorCode::RangeError, "t_end precedes the initial time");
  check_dimensions(cfg, state0);

  const long long steps = std::llround((t_end - state0.t) / dt);
  const double blowup = 1e12 * std::max(1.0, std::abs(cfg.P));

  Trajectory traj;
  traj.dt = dt;
  traj.samples.reserve(static_cast<size_t>(steps) + 1);
  traj.samples.push_back(state0);

  LatticeState current = state0;
  for (long long i = 1; i <= steps; ++i) {
    current = step(cfg, current, dt);
    current.t = state0.t + static_cast<double>(i) * dt;
    if (!state_finite(current)) {
      traj.truncated = true;
      break;
    }
    traj.samples.push_back(current);
    double amplitude = 0.0;
    for (double x : current.u) amplitude = std::max(amplitude, std::abs(x));
    for (double x : current.v) amplitude = std::max(amplitude, std::abs(x));
    if (amplitude > blowup) {
      traj.truncated = true;
      break;
    }
  }
  return traj;
}

double default_time_step(const LatticeConfig& cfg, const LatticeState& state) {
  double stiffness = 0.0;
  for (double strain : bond_strains(cfg, state))
    stiffness = std::max(stiffness, std::abs(cfg.stress.dsigma(strain)));
  stiffness = std::max(stiffness, std::abs(cfg.stress.dsigma(cfg.P)));
  stiffness = std::max(stiffness, 1e-6);
  double dt = 0.1 * cfg.h1() / std::sqrt(stiffness);
  if (cfg.eps != 0.0) {
    const double n2 = static_cast<double>(cfg.n) * cfg.n;
    dt = std::min(dt, 0.5 / (std::abs(cfg.eps) * n2));
  }
  return dt;
}

LatticeState sine_mode_state(const LatticeConfig& cfg, int mode, double amp) {
  if (mode < 0 || mode > cfg.interior())
    fail(ErrorCode::RangeError, "mode index outside 0..n-1");
  LatticeState state;
  state.u.resize(cfg.interior());
  state.v.assign(cfg.interior(), 0.0);
  for (int j = 1; j <= cfg.interior(); ++j) {
    double value = j * cfg.h1() * cfg.P;
    if (mode > 0 && amp != 0.0)
      value += amp * std::sin(std::numbers::pi * mode * j / cfg.n);
    state.u[j - 1] = value;
  }
  return state;
}

}  // namespace phasewave
