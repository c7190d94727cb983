#include "phasewave/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phasewave/errors.hpp"

namespace phasewave {
namespace {

constexpr double kPi = std::numbers::pi;

void check_state(const SchemeGrid& grid, const DiscreteState& st) {
  const auto m = static_cast<size_t>(grid.interior());
  if (st.u_prev.size() != m || st.u_curr.size() != m)
    fail(ErrorCode::DimensionMismatch, "state levels do not match grid size");
}

std::vector<double> strains_of(const SchemeGrid& grid, const std::vector<double>& u) {
  const double inv_h1 = static_cast<double>(grid.n);
  std::vector<double> strains(grid.n);
  double prev = 0.0;
  for (int k = 0; k < grid.interior(); ++k) {
    strains[k] = (u[k] - prev) * inv_h1;
    prev = u[k];
  }
  strains[grid.n - 1] = (grid.P - prev) * inv_h1;
  return strains;
}

// Thomas elimination for the constant-coefficient system
// (1+2c) x_j - c x_{j-1} - c x_{j+1} = r_j.
std::vector<double> solve_tridiagonal(double c, std::vector<double> r) {
  const size_t m = r.size();
  const double diag = 1.0 + 2.0 * c;
  std::vector<double> upper(m, 0.0);
  double pivot = diag;
  if (std::abs(pivot) < 1e-14 * (1.0 + std::abs(diag)))
    fail(ErrorCode::SingularSystem, "zero pivot in the implicit step");
  upper[0] = -c / pivot;
  r[0] /= pivot;
  for (size_t j = 1; j < m; ++j) {
    pivot = diag + c * upper[j - 1];
    if (std::abs(pivot) < 1e-14 * (1.0 + std::abs(diag)))
      fail(ErrorCode::SingularSystem, "zero pivot in the implicit step");
    upper[j] = -c / pivot;
    r[j] = (r[j] + c * r[j - 1]) / pivot;
  }
  for (size_t j = m - 1; j-- > 0;) r[j] -= upper[j] * r[j + 1];
  return r;
}

DiscreteClass classify_modulus(double max_modulus) {
  if (max_modulus > 1.0 + 1e-12) return DiscreteClass::Unstable;
  if (max_modulus < 1.0 - 1e-12) return DiscreteClass::Stable;
  return DiscreteClass::Marginal;
}

// Closed-form window conditions transcribed verbatim (including their mixed
// step-size powers) and flagged against root-modulus truth.
std::vector<WindowCondition> discrete_windows(const SchemeGrid& grid, double tau,
                                              const std::vector<ModeRoot>& modes,
                                              DiscreteClass truth) {
  std::vector<WindowCondition> out;
  const double h1 = grid.h1();
  const double h2 = grid.h2;
  const double eps = grid.eps;
  const double s1 = std::sin(0.5 * kPi / grid.n);
  const double s1sq = s1 * s1;
  const bool stable_truth = truth == DiscreteClass::Stable;
  const bool unstable_truth = truth == DiscreteClass::Unstable;

  auto add_iff = [&](const std::string& name, const std::string& claim, bool applicable,
                     bool holds, bool truth_value) {
    out.push_back({name, claim, applicable, applicable && holds,
                   !applicable || (holds == truth_value)});
  };
  auto add_sufficient = [&](const std::string& name, const std::string& claim, bool applicable,
                            bool holds, bool truth_value) {
    out.push_back({name, claim, applicable, applicable && holds,
                   !applicable || !holds || truth_value});
  };

  add_iff("uniphase_stability_window", "all moduli below one", true,
          tau > h1 / (h2 * h2 * s1sq) &&
              eps > -h1 * h1 / (2.0 * h2 * s1sq) + 0.5 * h1 * h2 * tau,
          stable_truth);

  bool per_mode_literal = true;
  bool per_mode_resolved = true;
  bool growth_literal = true;
  bool growth_resolved = false;
  for (const auto& mode : modes) {
    const double mu = mode.mu;
    const double lead = h1 * h1 - eps * h2 * mu;
    per_mode_literal =
        per_mode_literal && (h1 * h1 / lead - 1.0 < 0.0) &&
        (-1.0 - lead / (h2 * h2) < std::abs(2.0 * h1 * h1 + h1 * h1 * h1 * tau * mu - eps * h2 * mu) / (h1 * h1)) &&
        (std::abs(2.0 * h1 * h1 + h1 * h1 * h1 * tau * mu - eps * h2 * mu) / (h1 * h1) <
         1.0 + lead / (h1 * h1));
    per_mode_resolved = per_mode_resolved && tau > -4.0 * h1 / (h2 * h2 * mu) &&
                        eps > 2.0 * h1 * h1 / (mu * h2) + 0.5 * h1 * h2 * tau;
    growth_literal =
        growth_literal &&
        (-1.0 - lead / (h1 * h1) <
         std::abs(2.0 * h1 * h1 + h2 * h2 * h1 * tau * mu - eps * h2 * mu) / (h1 * h1)) &&
        (std::abs(2.0 * h1 * h1 + h2 * h2 * h1 * tau * mu - eps * h2 * mu) / (h1 * h1) <
         lead / (h1 * h1) + 1.0);
    growth_resolved = growth_resolved || (tau < -4.0 * h1 / (h2 * h2 * mu) &&
                                          eps < 2.0 * h1 * h1 / (h2 * mu) + 0.5 * h1 * h2 * tau);
  }
  add_iff("per_mode_modulus_window", "all moduli below one", true, per_mode_literal, stable_truth);
  add_iff("per_mode_window_resolved", "all moduli below one", true, per_mode_resolved, stable_truth);

  add_sufficient("instability_window_a", "some modulus above one", true,
                 tau < -h1 / (h1 * h1 * s1sq) &&
                     eps < -h1 * h1 / (4.0 * h2 * s1sq) + 0.5 * h1 * h2 * tau,
                 unstable_truth);
  add_sufficient("instability_window_b", "some modulus above one", true,
                 eps < -h1 * h1 / (2.0 * h2 * s1sq) - h1 * h2 * tau, unstable_truth);
  add_sufficient("instability_window_c", "some modulus above one", true,
                 tau > h1 / (h1 * h1 * s1sq) && eps > -h1 * h1 / (4.0 * h2 * s1sq) &&
                     eps < -h1 * h1 / (4.0 * h2 * s1sq) + h1 * h2 * tau,
                 unstable_truth);
  add_sufficient("per_mode_growth_window", "some modulus above one", true, growth_literal,
                 unstable_truth);
  add_sufficient("per_mode_growth_resolved", "some modulus above one", true, growth_resolved,
                 unstable_truth);
  add_sufficient("undamped_saddle_threshold", "some modulus above one", eps == 0.0,
                 tau < h1 / (h2 * h2 * s1sq), unstable_truth);
  return out;
}

Complex ipow(Complex base, long long p) {
  if (p < 0) return 1.0 / ipow(base, -p);
  Complex result{1.0, 0.0};
  while (p > 0) {
    if (p & 1) result *= base;
    base *= base;
    p >>= 1;
  }
  return result;
}

}  // namespace

const char* to_string(DiscreteClass c) {
  switch (c) {
    case DiscreteClass::Stable: return "Stable";
    case DiscreteClass::Unstable: return "Unstable";
    case DiscreteClass::Marginal: return "Marginal";
  }
  return "Unknown";
}

void validate_grid(const SchemeGrid& grid) {
  if (grid.n < 2) fail(ErrorCode::RangeError, "need at least two bonds");
  if (!(grid.h2 > 0.0 && grid.h2 < 1.0))
    fail(ErrorCode::RangeError, "time step h2 must lie in (0,1)");
  if (!(grid.h1() > 0.0 && grid.h1() < 1.0))
    fail(ErrorCode::RangeError, "mesh width h1 must lie in (0,1)");
  for (int k = 1; k < grid.n; ++k) {
    const double lead = grid.h1() * grid.h1() - grid.eps * grid.h2 * mode_mu(k, grid.n);
    if (std::abs(lead) < 1e-12 * grid.h1() * grid.h1())
      fail(ErrorCode::SingularLeading,
           "damping coefficient coincides with an excluded value h1^2/(h2*mu_k)");
  }
}

DiscreteState discrete_step(const SchemeGrid& grid, const DiscreteState& st) {
  check_state(grid, st);
  const int m = grid.interior();
  const double h2sq = grid.h2 * grid.h2;
  const double c = grid.eps * grid.h2 * grid.n * grid.n;

  const std::vector<double> strains = strains_of(grid, st.u_curr);
  std::vector<double> flux(grid.n);
  for (int k = 0; k < grid.n; ++k) flux[k] = grid.stress.sigma(strains[k]);

  std::vector<double> rhs(m);
  for (int j = 0; j < m; ++j) {
    const double left = j > 0 ? st.u_curr[j - 1] : 0.0;
    const double right = j + 1 < m ? st.u_curr[j + 1] : grid.P;
    const double lap = right - 2.0 * st.u_curr[j] + left;
    rhs[j] = 2.0 * st.u_curr[j] - st.u_prev[j] + h2sq * (flux[j + 1] - flux[j]) - c * lap;
  }
  rhs[m - 1] += c * grid.P;  // known new-level boundary moved to the right side

  DiscreteState next;
  next.u_prev = st.u_curr;
  next.u_curr = c == 0.0 ? std::move(rhs) : solve_tridiagonal(c, std::move(rhs));
  next.p = st.p + 1;
  return next;
}

ModeRoot discrete_characteristic(const SchemeGrid& grid, double tau, int k) {
  if (k < 1 || k > grid.n - 1) fail(ErrorCode::RangeError, "mode index outside 1..n-1");
  const double h1 = grid.h1();
  const double mu = mode_mu(k, grid.n);
  const double a = h1 * h1 - grid.eps * grid.h2 * mu;
  if (std::abs(a) < 1e-12 * h1 * h1)
    fail(ErrorCode::SingularLeading, "vanishing leading coefficient");
  const double b = -(2.0 * h1 * h1 + h1 * grid.h2 * grid.h2 * tau * mu - grid.eps * grid.h2 * mu);
  const double c = h1 * h1;

  ModeRoot mode;
  mode.k = k;
  mode.mu = mu;
  mode.a = a;
  mode.b = b;
  mode.c = c;
  auto [r1, r2] = solve_quadratic(Complex(a), Complex(b), Complex(c));
  if (std::abs(r1) < std::abs(r2)) std::swap(r1, r2);
  mode.root_plus = r1;   // larger modulus first for amplification factors
  mode.root_minus = r2;
  mode.tag = std::abs(r1) > 1.0 + 1e-12   ? ModeTag::UnstableNode
             : std::abs(r1) < 1.0 - 1e-12 ? ModeTag::StableNode
                                          : ModeTag::Center;
  return mode;
}

DiscreteReport classify_discrete_uniphase_tau(const SchemeGrid& grid, double tau) {
  validate_grid(grid);
  DiscreteReport report;
  for (int k = 1; k < grid.n; ++k) {
    report.modes.push_back(discrete_characteristic(grid, tau, k));
    report.max_modulus = std::max(report.max_modulus, std::abs(report.modes.back().root_plus));
  }
  report.classification = classify_modulus(report.max_modulus);
  report.conditions = discrete_windows(grid, tau, report.modes, report.classification);
  return report;
}

DiscreteReport classify_discrete_uniphase(const SchemeGrid& grid) {
  return classify_discrete_uniphase_tau(grid, grid.stress.dsigma(grid.P));
}

double discrete_steady_check(const SchemeGrid& grid, const std::vector<double>& u) {
  if (u.size() != static_cast<size_t>(grid.interior()))
    fail(ErrorCode::DimensionMismatch, "displacement vector does not match grid size");
  const std::vector<double> strains = strains_of(grid, u);
  double worst = 0.0;
  for (int k = 0; k + 1 < grid.n; ++k)
    worst = std::max(worst, std::abs(grid.stress.sigma(strains[k + 1]) -
                                     grid.stress.sigma(strains[k])));
  return worst;
}

DiscreteManifold discrete_manifolds(const SchemeGrid& grid, const std::vector<Complex>& eta,
                                    long long p_from, long long p_to) {
  if (eta.size() != static_cast<size_t>(grid.interior()))
    fail(ErrorCode::DimensionMismatch, "coefficient vector must have n-1 entries");
  if (p_to < p_from) fail(ErrorCode::RangeError, "empty step range");
  const double tau = grid.stress.dsigma(grid.P);

  std::vector<Complex> lambda_plus(grid.interior()), lambda_minus(grid.interior());
  std::vector<Complex> coeff(grid.interior());
  for (int k = 1; k <= grid.interior(); ++k) {
    const ModeRoot mode = discrete_characteristic(grid, tau, k);
    if (!(std::abs(mode.root_plus) > 1.0 + 1e-12 && std::abs(mode.root_minus) < 1.0 - 1e-12))
      fail(ErrorCode::NotSaddle, "mode " + std::to_string(k) +
                                     " does not split across the unit circle");
    lambda_plus[k - 1] = mode.root_plus;
    lambda_minus[k - 1] = mode.root_minus;
    Complex c{0.0, 0.0};
    for (int l = 1; l <= grid.interior(); ++l)
      c += eta[l - 1] * std::exp(Complex(0.0, kPi * k * l / grid.n));
    coeff[k - 1] = c;
  }

  DiscreteManifold result;
  for (long long p = p_from; p <= p_to; ++p) {
    result.steps.push_back(p);
    std::vector<double> stable(grid.interior()), unstable(grid.interior());
    for (int k = 1; k <= grid.interior(); ++k) {
      const double base = k * grid.h1() * grid.P;
      stable[k - 1] = base + (ipow(lambda_minus[k - 1], p) * coeff[k - 1]).real();
      unstable[k - 1] = base + (ipow(lambda_plus[k - 1], p) * coeff[k - 1]).real();
    }
    result.stable.push_back(std::move(stable));
    result.unstable.push_back(std::move(unstable));
  }
  return result;
}

DiscreteTrajectory run_discrete(const SchemeGrid& grid, const DiscreteState& initial,
                                long long steps) {
  if (steps < 0) fail(ErrorCode::RangeError, "negative step count");
  check_state(grid, initial);
  validate_grid(grid);
  const double blowup = 1e12 * std::max(1.0, std::abs(grid.P));

  DiscreteTrajectory traj;
  traj.start_p = initial.p;
  auto record = [&](const std::vector<double>& u) {
    double dev = 0.0;
    bool finite = true;
    for (int k = 1; k <= grid.interior(); ++k) {
      const double d = u[k - 1] - k * grid.h1() * grid.P;
      if (!std::isfinite(u[k - 1])) finite = false;
      dev = std::max(dev, std::abs(d));
    }
    if (!finite) return false;  // the offending level is dropped, like the integrator
    traj.levels.push_back(u);
    traj.deviation_max.push_back(dev);
    return dev < blowup;
  };

  DiscreteState state = initial;
  if (!record(state.u_curr)) {
    traj.truncated = true;
    return traj;
  }
  for (long long i = 0; i < steps; ++i) {
    state = discrete_step(grid, state);
    if (!record(state.u_curr)) {
      traj.truncated = true;
      break;
    }
  }
  return traj;
}

DiscreteState discrete_sine_state(const SchemeGrid& grid, int mode, double amp) {
  if (mode < 0 || mode > grid.interior())
    fail(ErrorCode::RangeError, "mode index outside 0..n-1");
  DiscreteState st;
  st.u_curr.resize(grid.interior());
  for (int j = 1; j <= grid.interior(); ++j) {
    double value = j * grid.h1() * grid.P;
    if (mode > 0 && amp != 0.0) value += amp * std::sin(kPi * mode * j / grid.n);
    st.u_curr[j - 1] = value;
  }
  st.u_prev = st.u_curr;
  st.p = 1;
  return st;
}

}  // namespace phasewave
