#pragma once

#include <vector>

#include "phasewave/spectral.hpp"

namespace phasewave {

/// Space-time grid of the fully discretized scheme: n spatial bonds
/// (h1 = 1/n), time step h2, m nominal time levels, damping eps.
struct SchemeGrid {
  int n = 2;
  double h2 = 0.5;
  int m = 2;
  double eps = 0.0;
  double P = 1.0;
  StressModel stress = default_stress();

  double h1() const { return 1.0 / n; }
  int interior() const { return n - 1; }
};

/// Two consecutive displacement levels of the time-stepping map.
struct DiscreteState {
  std::vector<double> u_prev;
  std::vector<double> u_curr;
  long long p = 1;
};

enum class DiscreteClass { Stable, Unstable, Marginal };

const char* to_string(DiscreteClass c);

struct DiscreteReport {
  std::vector<ModeRoot> modes;  // amplification quadratics, roots are factors
  DiscreteClass classification = DiscreteClass::Marginal;
  double max_modulus = 0.0;
  std::vector<WindowCondition> conditions;
};

struct DiscreteTrajectory {
  long long start_p = 0;
  std::vector<std::vector<double>> levels;  // displacement rows per time level
  std::vector<double> deviation_max;        // max |u_k - k*h1*P| per level
  bool truncated = false;
};

/// Validates h1, h2 in (0,1) and rejects damping values that make the
/// implicit step singular (eps == h1^2/(h2*mu_k) for some mode).
void validate_grid(const SchemeGrid& grid);

/// One step of the implicit map: the damping term couples the new time
/// level, giving a tridiagonal system solved by direct elimination.
DiscreteState discrete_step(const SchemeGrid& grid, const DiscreteState& st);

/// Amplification quadratic of mode k about the uniphase state with
/// stiffness tau:
///   lambda^2 (h1^2 - eps*h2*mu_k)
///     - lambda (2 h1^2 + h1 h2^2 tau mu_k - eps*h2*mu_k) + h1^2 = 0.
/// Roots are amplification factors; modulus 1 is the stability boundary.
ModeRoot discrete_characteristic(const SchemeGrid& grid, double tau, int k);

/// Root-modulus classification of the uniphase state (ground truth),
/// plus the closed-form window conditions evaluated for comparison.
DiscreteReport classify_discrete_uniphase(const SchemeGrid& grid);
DiscreteReport classify_discrete_uniphase_tau(const SchemeGrid& grid, double tau);

/// max_k |sigma(strain_{k+1}) - sigma(strain_k)|; zero exactly on steady
/// solutions, which coincide with the semidiscrete ones.
double discrete_steady_check(const SchemeGrid& grid, const std::vector<double>& u);

struct DiscreteManifold {
  std::vector<long long> steps;
  std::vector<std::vector<double>> stable;    // [step][component k-1]
  std::vector<std::vector<double>> unstable;
};

/// Linear stable/unstable sequences of a saddle grid point: component k
/// follows k*h1*P + (lambda_k^{-/+})^p * Re(sum_l eta_l exp(i a_k l)).
/// Requires |lambda_k^+| > 1 > |lambda_k^-| for every mode.
DiscreteManifold discrete_manifolds(const SchemeGrid& grid, const std::vector<Complex>& eta,
                                    long long p_from, long long p_to);

/// Iterates the map, recording per-level deviation from the uniphase
/// profile for growth-rate estimation.
DiscreteTrajectory run_discrete(const SchemeGrid& grid, const DiscreteState& initial,
                                long long steps);

/// Both levels set to the uniphase profile plus amp * sin(mode*pi*j/n)
/// (zero initial discrete velocity).
DiscreteState discrete_sine_state(const SchemeGrid& grid, int mode, double amp);

}  // namespace phasewave
