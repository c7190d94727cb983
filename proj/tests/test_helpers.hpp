#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "phasewave/lattice.hpp"

namespace phasewave::testing {

// ---------------------------------------------------------------------------
// Independent two-phase oracle: dense scan over the lower ascending branch
// with per-point conjugate matching by bisection, crossings refined by
// bisection. Uses raw polynomial evaluation only; shares nothing with the
// production enumeration path.
// ---------------------------------------------------------------------------

struct OracleSolution {
  int k_alpha = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double C = 0.0;
};

inline std::vector<OracleSolution> brute_force_two_phase(double c2, double c1, int n, double P) {
  auto sigma = [&](double x) { return ((x + c2) * x + c1) * x; };

  const double disc = c2 * c2 - 3.0 * c1;
  const double alpha_bar = (-c2 - std::sqrt(disc)) / 3.0;
  const double beta_under = (-c2 + std::sqrt(disc)) / 3.0;
  const double alpha_under = -c2 - 2.0 * beta_under;
  const double beta_bar = -c2 - 2.0 * alpha_bar;

  // Conjugate strain on the upper ascending branch with the same stress.
  auto conjugate = [&](double a) {
    double lo = beta_under, hi = beta_bar;
    const double level = sigma(a);
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (sigma(mid) < level ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  std::vector<OracleSolution> found;
  const int grid = 2000;
  const double margin = 1e-9 * (alpha_bar - alpha_under);
  for (int k = 1; k < n; ++k) {
    auto balance = [&](double a) { return k * a + (n - k) * conjugate(a) - n * P; };
    double prev_a = alpha_under + margin;
    double prev_f = balance(prev_a);
    for (int i = 1; i <= grid; ++i) {
      const double a = alpha_under + margin +
                       (alpha_bar - alpha_under - 2.0 * margin) * i / grid;
      const double f = balance(a);
      if ((prev_f < 0.0) != (f < 0.0)) {
        double lo = prev_a, hi = a;
        double flo = prev_f;
        for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
          const double mid = 0.5 * (lo + hi);
          const double fm = balance(mid);
          if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        const double a_star = 0.5 * (lo + hi);
        found.push_back({k, a_star, conjugate(a_star), sigma(a_star)});
      }
      prev_a = a;
      prev_f = f;
    }
  }
  return found;
}

// ---------------------------------------------------------------------------
// Centered finite-difference Jacobian of the lattice right-hand side in
// first-order form, state ordering [u; v].
// ---------------------------------------------------------------------------

inline Eigen::MatrixXd fd_jacobian(const LatticeConfig& cfg, const LatticeState& base,
                                   double h = 1e-6) {
  const int m = cfg.interior();
  Eigen::MatrixXd J(2 * m, 2 * m);
  for (int col = 0; col < 2 * m; ++col) {
    LatticeState plus = base, minus = base;
    auto& plus_vec = col < m ? plus.u : plus.v;
    auto& minus_vec = col < m ? minus.u : minus.v;
    plus_vec[col % m] += h;
    minus_vec[col % m] -= h;
    const Derivative dp = rhs(cfg, plus);
    const Derivative dm = rhs(cfg, minus);
    for (int row = 0; row < m; ++row) {
      J(row, col) = (dp.du[row] - dm.du[row]) / (2.0 * h);
      J(m + row, col) = (dp.dv[row] - dm.dv[row]) / (2.0 * h);
    }
  }
  return J;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240817u);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng());
}

}  // namespace phasewave::testing
