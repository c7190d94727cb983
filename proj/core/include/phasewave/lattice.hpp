#pragma once

#include <vector>

#include "phasewave/stress.hpp"

namespace phasewave {

/// Spatial lattice with n bonds on [0,1], h1 = 1/n, pinned ends
/// u_0 = 0 and u_n = P, damping coefficient eps.
struct LatticeConfig {
  int n = 2;
  double P = 1.0;
  double eps = 0.0;
  StressModel stress = default_stress();

  double h1() const { return 1.0 / n; }
  int interior() const { return n - 1; }
};

/// Interior displacements and velocities at time t. Boundary values are
/// implicit and never stored.
struct LatticeState {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

struct Derivative {
  std::vector<double> du;
  std::vector<double> dv;
};

struct Trajectory {
  std::vector<LatticeState> samples;
  double dt = 0.0;
  bool truncated = false;  // stopped early on a non-finite or blown-up state
};

/// Bond strains (u_k - u_{k-1})/h1 for k = 1..n, both boundary bonds included.
std::vector<double> bond_strains(const LatticeConfig& cfg, const LatticeState& state);

/// First-order form right-hand side: du = v,
/// dv_k = (1/h1)[sigma(strain_{k+1}) - sigma(strain_k)] + (eps/h1^2)(v_{k+1} - 2v_k + v_{k-1}),
/// with ghost velocities v_0 = v_n = 0 from the time-constant boundaries.
Derivative rhs(const LatticeConfig& cfg, const LatticeState& state);

/// V(u,v) = sum_k [v_k^2/2 + w(strain_k)] + w(strain_n).
double total_energy(const LatticeConfig& cfg, const LatticeState& state);

/// dV/dt along solutions: -(eps/h1^2) * sum_{k=0}^{n-1} (v_{k+1} - v_k)^2.
double dissipation_rate(const LatticeConfig& cfg, const LatticeState& state);

/// One classical fourth-order Runge-Kutta step. A non-finite result is
/// returned as-is; blow-up is an observation, not a failure.
LatticeState step(const LatticeConfig& cfg, const LatticeState& state, double dt);

/// Fixed-step integration sampling every step, ending early with
/// Trajectory::truncated when the state stops being finite (or exceeds a
/// blow-up threshold).
Trajectory integrate(const LatticeConfig& cfg, const LatticeState& state0, double dt,
                     double t_end);

bool state_finite(const LatticeState& state);

/// CFL-style step heuristic: 0.1*h1/sqrt(max |dsigma|) over the state's bond
/// strains, additionally capped by the damping scale when eps != 0.
double default_time_step(const LatticeConfig& cfg, const LatticeState& state);

/// Linear profile u_j = j*h1*P plus amp * sin(k*pi*j/n) on u, zero velocity.
LatticeState sine_mode_state(const LatticeConfig& cfg, int mode, double amp);

}  // namespace phasewave
