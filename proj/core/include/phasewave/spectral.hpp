#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "phasewave/quadratic.hpp"
#include "phasewave/steady.hpp"

namespace phasewave {

enum class ModeTag {
  StableFocus,
  StableNode,
  UnstableFocus,
  UnstableNode,
  Saddle,
  Center,
  Degenerate,
};

enum class Classification {
  AsymptoticallyStable,
  Unstable,
  Hyperbolic,
  Center,
  Mixed,
};

const char* to_string(ModeTag tag);
const char* to_string(Classification c);

/// One mode of the linearized dynamics: the characteristic quadratic
/// a*lambda^2 + b*lambda + c and its two roots. root_plus carries the
/// lexicographically larger (Re, Im); for a saddle that is the growing root.
struct ModeRoot {
  int k = 0;
  double mu = 0.0;  // -4 sin^2(k*pi/(2n))
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex c{0.0, 0.0};
  Complex root_plus{0.0, 0.0};
  Complex root_minus{0.0, 0.0};
  ModeTag tag = ModeTag::Degenerate;
};

/// A closed-form stability-window condition evaluated verbatim and compared
/// against the root-based classification. Never used as ground truth.
struct WindowCondition {
  std::string name;
  std::string claim;        // what holding the condition would assert
  bool applicable = false;  // referenced index sets nonempty, etc.
  bool holds = false;
  bool agrees_with_roots = false;
};

struct SpectrumReport {
  SteadySolution solution;
  std::vector<ModeRoot> modes;
  Classification classification = Classification::Mixed;
  std::vector<Complex> oracle;  // dense Jacobian eigenvalues, sorted (Re, Im)
  double max_discrepancy = 0.0;
  std::vector<WindowCondition> conditions;
  bool degenerate = false;  // dsigma vanished at some bond strain
};

/// Junction structure of a two-phase arrangement: bonds followed by a bond
/// of the same phase (j_alpha, j_beta) and alpha->beta interfaces (k_ab).
struct IndexSets {
  std::vector<int> j_alpha;
  std::vector<int> j_beta;
  std::vector<int> k_ab;
};

/// Eigenvalue of the Dirichlet second-difference stencil: -4 sin^2(k*pi/(2n)).
double mode_mu(int k, int n);

/// Per-mode spectrum of the uniphase state with effective stiffness tau;
/// covers both the ascending branch (tau > 0) and the falling branch.
SpectrumReport uniphase_spectrum_tau(int n, double eps, double tau);

/// Full uniphase report at boundary displacement P: per-mode quadratics,
/// roots, tags, plus the dense Jacobian oracle and the multiset discrepancy.
SpectrumReport uniphase_spectrum(const LatticeConfig& cfg, double P);

/// Classification derived from the mode tags alone.
Classification classify_uniphase(const SpectrumReport& report);

/// Oscillation periods T_k = pi/(n*sqrt(tau)) * csc(k*pi/(2n)) of the
/// undamped uniphase center; requires eps == 0 and dsigma(P) > 0.
std::vector<double> uniphase_periods(const LatticeConfig& cfg, double P);

IndexSets index_sets(const SteadySolution& sol);

/// Plane-wave mode quadratics of a two-phase state: the same-phase chains
/// use the uniphase form with tau resp. rho; interfaces get a
/// complex-constant quadratic. A local-constant-coefficient reduction: the
/// dense Jacobian remains the ground truth.
std::vector<ModeRoot> two_phase_mode_roots(const LatticeConfig& cfg, const SteadySolution& sol);

/// Two-phase report: classification from the dense Jacobian eigenvalues,
/// reduction roots and window conditions attached for comparison.
SpectrumReport classify_two_phase(const LatticeConfig& cfg, const SteadySolution& sol);

struct PeriodEntry {
  int p = 0;
  char phase = 'A';  // 'A': alpha chain, 'B': beta chain
  double period = 0.0;
};

/// Mode periods of the undamped two-phase state on the same-phase chains.
std::vector<PeriodEntry> two_phase_periods(const LatticeConfig& cfg, const SteadySolution& sol);

/// Linearization at a steady state in first-order form [[0, I], [S, eps*n^2*L]]
/// with Dirichlet closure; S is the dsigma-weighted second difference.
Eigen::MatrixXd jacobian(const LatticeConfig& cfg, const SteadySolution& sol);

struct EigenResult {
  std::vector<Complex> values;  // sorted by (Re, Im)
  double max_residual = 0.0;    // max ||M x - lambda x|| over returned pairs
};

/// Dense nonsymmetric eigenvalues (balanced Hessenberg + shifted QR via
/// Eigen). Residuals are verified against 1e-9 * ||M||_F; NoConvergence on
/// failure.
EigenResult dense_eigenvalues(const Eigen::MatrixXd& M);

struct ManifoldCurves {
  std::vector<double> times;
  // [sample][component k-1], k = 1..n-1
  std::vector<std::vector<double>> stable;
  std::vector<std::vector<double>> unstable;
};

/// Linear stable/unstable curves of a hyperbolic uniphase state: component k
/// follows u_k + exp(t*lambda_k^{-/+}) * Re(sum_j eta_j exp(i a_k j)).
ManifoldCurves linear_manifolds(const LatticeConfig& cfg, const SteadySolution& sol,
                                const std::vector<Complex>& eta,
                                const std::vector<double>& times);

struct PolycycleLimit {
  int k = 0;                  // curve index, pairs component k with k+1 (wraps to 1)
  bool forward_attainable = false;   // t -> +infinity limit finite for this curve
  bool backward_attainable = false;  // t -> -infinity limit finite
  double forward_limit = 0.0;        // claimed value u_k
  double backward_limit = 0.0;       // claimed value u_{k+1}
  double forward_value = 0.0;        // curve evaluated far forward (when attainable)
  double backward_value = 0.0;
  double far_time = 0.0;
};

struct PolycycleCurves {
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // [sample][curve k-1], k = 1..n
  std::vector<std::vector<bool>> valid;     // false where a denominator vanished
  bool any_skipped = false;
  std::vector<PolycycleLimit> limits;
};

/// Heteroclinic-style ratio curves chaining consecutive components of the
/// saddle equilibrium, with wraparound n+1 -> 1. Each curve converges to the
/// claimed limit on the side where the mode-root ordering makes the ratio
/// contract; the limit report records attainability per side.
PolycycleCurves polycycle(const LatticeConfig& cfg, const SteadySolution& sol,
                          const std::vector<Complex>& eta, const std::vector<double>& times);

}  // namespace phasewave
