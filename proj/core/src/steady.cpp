#include "phasewave/steady.hpp"

#include <algorithm>
#include <cmath>

#include "phasewave/errors.hpp"

namespace phasewave {
namespace {

// Mean strain k*alpha(C) + (n-k)*beta(C) minus the target n*P; strictly
// increasing in C since both conjugate branches ascend.
double phase_balance(const StressModel& stress, int n, int k_alpha, double P, double C) {
  const ConjugatePair pair = stress.conjugate_pair(C);
  return k_alpha * pair.alpha + (n - k_alpha) * pair.beta - n * P;
}

// Stress level solving the phase balance for one k_alpha, if any. The
// bracket stays strictly inside the conjugate band so solutions that would
// park a bond exactly on a critical strain are excluded.
bool solve_family(const StressModel& stress, int n, int k_alpha, double P, double& C_out) {
  const CriticalData& crit = stress.critical();
  const double width = crit.sigma_bar - crit.sigma_under;
  const double margin = 1e-12 * std::max(1.0, width);
  double lo = crit.sigma_under + margin;
  double hi = crit.sigma_bar - margin;
  if (lo >= hi) return false;
  if (phase_balance(stress, n, k_alpha, P, lo) >= 0.0) return false;
  if (phase_balance(stress, n, k_alpha, P, hi) <= 0.0) return false;

  while (hi - lo > 1e-14 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (phase_balance(stress, n, k_alpha, P, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double C = 0.5 * (lo + hi);
  // One Newton polish on the balance equation; d(alpha)/dC = 1/dsigma(alpha).
  const ConjugatePair pair = stress.conjugate_pair(C);
  const double slope = k_alpha / stress.dsigma(pair.alpha) + (n - k_alpha) / stress.dsigma(pair.beta);
  if (slope > 0.0) {
    const double polished = C - phase_balance(stress, n, k_alpha, P, C) / slope;
    if (polished > lo - 1e-12 && polished < hi + 1e-12) C = polished;
  }
  C_out = C;
  return true;
}

std::vector<double> profile_from_word(const LatticeConfig& cfg, const std::string& word,
                                      double alpha, double beta) {
  std::vector<double> u(cfg.interior());
  double position = 0.0;
  for (int j = 0; j < cfg.interior(); ++j) {
    position += cfg.h1() * (word[j] == 'A' ? alpha : beta);
    u[j] = position;
  }
  return u;
}

long long capped_binomial(int n, int k, long long cap) {
  long long value = 1;
  for (int i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value >= cap) return cap;
  }
  return value;
}

}  // namespace

SteadySolution uniphase(const LatticeConfig& cfg) {
  SteadySolution sol;
  sol.kind = SteadyKind::Uniphase;
  sol.alpha = sol.beta = cfg.P;
  sol.C = cfg.stress.sigma(cfg.P);
  sol.k_alpha = cfg.n;
  sol.arrangement.assign(static_cast<size_t>(cfg.n), 'A');
  sol.u.resize(cfg.interior());
  for (int j = 1; j <= cfg.interior(); ++j) sol.u[j - 1] = j * cfg.h1() * cfg.P;
  const double slope = cfg.stress.dsigma(cfg.P);
  if (std::abs(slope) <= 1e-14) {
    sol.membership = Membership::EMinus;
    sol.degenerate = true;
  } else {
    sol.membership = slope > 0.0 ? Membership::EPlus : Membership::EMinus;
  }
  return sol;
}

Enumeration enumerate_two_phase(const LatticeConfig& cfg, int max_arrangements) {
  if (!cfg.stress.valid())
    fail(ErrorCode::NoSpinodal, "stress law failed validation: " + cfg.stress.validate().first_failure());
  Enumeration result;
  for (int k_alpha = 1; k_alpha < cfg.n; ++k_alpha) {
    double C = 0.0;
    if (!solve_family(cfg.stress, cfg.n, k_alpha, cfg.P, C)) continue;
    const ConjugatePair pair = cfg.stress.conjugate_pair(C);

    // "A..AB..B" is the lexicographically first word; next_permutation walks
    // the remaining arrangements in lexicographic order.
    std::string word(static_cast<size_t>(cfg.n), 'B');
    std::fill(word.begin(), word.begin() + k_alpha, 'A');
    int emitted = 0;
    do {
      if (emitted >= max_arrangements) {
        result.truncated = true;
        break;
      }
      SteadySolution sol;
      sol.kind = SteadyKind::TwoPhase;
      sol.alpha = pair.alpha;
      sol.beta = pair.beta;
      sol.C = C;
      sol.k_alpha = k_alpha;
      sol.arrangement = word;
      sol.u = profile_from_word(cfg, word, pair.alpha, pair.beta);
      sol.membership = Membership::EPlus;
      sol.degenerate = pair.degenerate;
      result.solutions.push_back(std::move(sol));
      ++emitted;
    } while (std::next_permutation(word.begin(), word.end()));
  }
  return result;
}

double residual(const LatticeConfig& cfg, const std::vector<double>& u) {
  if (u.size() != static_cast<size_t>(cfg.interior()))
    fail(ErrorCode::DimensionMismatch, "displacement vector does not match lattice size");
  LatticeState state;
  state.u = u;
  state.v.assign(u.size(), 0.0);
  const std::vector<double> strains = bond_strains(cfg, state);
  double worst = 0.0;
  for (int k = 0; k + 1 < cfg.n; ++k)
    worst = std::max(worst,
                     std::abs(cfg.stress.sigma(strains[k + 1]) - cfg.stress.sigma(strains[k])));
  return worst;
}

long long count_all(const LatticeConfig& cfg, long long cap) {
  long long total = 1;  // uniphase
  for (int k_alpha = 1; k_alpha < cfg.n; ++k_alpha) {
    double C = 0.0;
    if (solve_family(cfg.stress, cfg.n, k_alpha, cfg.P, C))
      total += capped_binomial(cfg.n, k_alpha, cap);
  }
  return total;
}

}  // namespace phasewave
