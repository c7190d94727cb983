#include "phasewave/stress.hpp"

#include <cmath>
#include <sstream>

namespace phasewave {
namespace {

// Bisection on a bracketing interval of a monotone increasing function,
// narrowed to width 1e-14 and finished with one Newton polish.
template <typename F, typename DF>
double bisect_newton(F f, DF df, double lo, double hi) {
  double flo = f(lo);
  if (flo > 0.0) return lo;
  if (f(hi) < 0.0) return hi;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  const double d = df(x);
  if (d != 0.0) {
    const double polished = x - f(x) / d;
    if (polished >= lo - 1e-13 && polished <= hi + 1e-13) x = polished;
  }
  return x;
}

}  // namespace

StressModel StressModel::cubic(double c2, double c1) {
  StressModel model(Kind::Cubic, c2, c1);
  model.run_checks();
  return model;
}

void StressModel::run_checks() {
  report_.checks.clear();
  auto add = [this](const std::string& name, bool ok, const std::string& detail) {
    report_.checks.push_back({name, ok, detail});
    return ok;
  };

  add("zero_at_origin", sigma(0.0) == 0.0, "sigma(0) must vanish");

  // sigma(xi) = xi * q(xi) with q(xi) = xi^2 + c2*xi + c1; the odd sign law
  // holds exactly when q > 0 away from the origin.
  const double q_disc = c2_ * c2_ - 4.0 * c1_;
  bool sign_ok = q_disc < 0.0;
  for (int i = 1; i <= 200 && sign_ok; ++i) {
    const double xi = 6.0 * i / 200.0;
    sign_ok = sigma(xi) > 0.0 && sigma(-xi) < 0.0;
  }
  add("sign_law", sign_ok, "sigma must be positive for positive strain and negative for negative strain");

  // Two critical strains 0 < alpha_bar < beta_under require dsigma to have
  // two positive real roots.
  const double p_disc = c2_ * c2_ - 3.0 * c1_;
  const bool spinodal_ok = p_disc > 0.0 && c1_ > 0.0 && c2_ < 0.0;
  add("two_critical_strains", spinodal_ok, "dsigma must change sign on a positive strain interval");

  if (!spinodal_ok || !sign_ok) return;

  CriticalData crit;
  const double root = std::sqrt(p_disc);
  crit.alpha_bar = (-c2_ - root) / 3.0;
  crit.beta_under = (-c2_ + root) / 3.0;
  crit.sigma_bar = sigma(crit.alpha_bar);
  crit.sigma_under = sigma(crit.beta_under);
  // sigma - sigma_under has a double root at beta_under; the remaining root
  // is the conjugate strain (Vieta, root sum = -c2). Same at the top level.
  crit.alpha_under = -c2_ - 2.0 * crit.beta_under;
  crit.beta_bar = -c2_ - 2.0 * crit.alpha_bar;

  const double tol = 1e-12 * std::max({1.0, std::abs(crit.sigma_bar), std::abs(crit.sigma_under)});
  const bool ordered = 0.0 < crit.alpha_under && crit.alpha_under < crit.alpha_bar &&
                       crit.alpha_bar < crit.beta_under && crit.beta_under < crit.beta_bar;
  const bool conjugates_match = std::abs(sigma(crit.alpha_under) - crit.sigma_under) <= tol &&
                                std::abs(sigma(crit.beta_bar) - crit.sigma_bar) <= tol &&
                                crit.sigma_under < crit.sigma_bar;
  std::ostringstream detail;
  detail << "alpha_under=" << crit.alpha_under << " alpha_bar=" << crit.alpha_bar
         << " beta_under=" << crit.beta_under << " beta_bar=" << crit.beta_bar;
  if (add("threshold_ordering", ordered && conjugates_match, detail.str()))
    critical_ = crit;
}

const CriticalData& StressModel::critical() const {
  if (!critical_)
    fail(ErrorCode::NoSpinodal, "stress law failed validation: " + report_.first_failure());
  return *critical_;
}

ConjugatePair StressModel::conjugate_pair(double C) const {
  const CriticalData& crit = critical();
  const double tol = 1e-14 * std::max({1.0, std::abs(crit.sigma_bar), std::abs(crit.sigma_under)});
  if (C < crit.sigma_under - tol || C > crit.sigma_bar + tol) {
    std::ostringstream msg;
    msg << "stress level " << C << " outside conjugate band (" << crit.sigma_under << ", "
        << crit.sigma_bar << ")";
    fail(ErrorCode::OutOfBand, msg.str());
  }
  if (std::abs(C - crit.sigma_bar) <= tol) return {crit.alpha_bar, crit.beta_bar, true};
  if (std::abs(C - crit.sigma_under) <= tol) return {crit.alpha_under, crit.beta_under, true};

  auto f = [&](double xi) { return sigma(xi) - C; };
  auto df = [&](double xi) { return dsigma(xi); };
  ConjugatePair pair;
  pair.alpha = bisect_newton(f, df, crit.alpha_under, crit.alpha_bar);
  pair.beta = bisect_newton(f, df, crit.beta_under, crit.beta_bar);
  return pair;
}

}  // namespace phasewave
