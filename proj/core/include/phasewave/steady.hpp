#pragma once

#include <string>
#include <vector>

#include "phasewave/lattice.hpp"

namespace phasewave {

enum class SteadyKind { Uniphase, TwoPhase };

/// EPlus: every bond strain sits on an ascending branch (dsigma > 0).
/// EMinus: some bond strain lies on the falling branch.
enum class Membership { EPlus, EMinus };

/// A steady state of the lattice: all bonds carry the common stress C and
/// the strains take at most two values alpha (on k_alpha bonds) and beta.
struct SteadySolution {
  SteadyKind kind = SteadyKind::Uniphase;
  double alpha = 0.0;
  double beta = 0.0;
  double C = 0.0;
  int k_alpha = 0;
  std::string arrangement;    // bond phase word over {A,B}, length n
  std::vector<double> u;      // interior displacements
  Membership membership = Membership::EPlus;
  bool degenerate = false;    // some bond sits exactly at a critical strain
};

/// Linear profile u_k = k*h1*P with common stress sigma(P).
SteadySolution uniphase(const LatticeConfig& cfg);

struct Enumeration {
  std::vector<SteadySolution> solutions;
  bool truncated = false;  // some family had more arrangements than the cap
};

/// All two-phase steady solutions: for each count k_alpha of alpha-bonds the
/// stress level solves k*alpha(C) + (n-k)*beta(C) = n*P, a strictly
/// increasing scalar equation solved by bisection on the open conjugate
/// band. Families are emitted in k_alpha order, arrangements in
/// lexicographic order up to max_arrangements per family.
Enumeration enumerate_two_phase(const LatticeConfig& cfg, int max_arrangements = 64);

/// max_k |sigma(strain_{k+1}) - sigma(strain_k)| over interior sites; zero
/// exactly on steady solutions.
double residual(const LatticeConfig& cfg, const std::vector<double>& u);

/// 1 (uniphase) plus the arrangement count of every two-phase family, each
/// family capped at `cap`.
long long count_all(const LatticeConfig& cfg, long long cap = 64);

}  // namespace phasewave
