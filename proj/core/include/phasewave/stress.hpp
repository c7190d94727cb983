#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phasewave/errors.hpp"

namespace phasewave {

/// The six threshold quantities of a non-monotone stress law: the two
/// critical strains bounding the falling branch, the stress extrema there,
/// and the conjugate strains carrying the same stress on the outer
/// ascending branches.
struct CriticalData {
  double alpha_under = 0.0;  // ascending-branch strain with sigma == sigma_under
  double alpha_bar = 0.0;    // local-maximum strain
  double beta_under = 0.0;   // local-minimum strain
  double beta_bar = 0.0;     // ascending-branch strain with sigma == sigma_bar
  double sigma_bar = 0.0;    // sigma(alpha_bar), top of the conjugate band
  double sigma_under = 0.0;  // sigma(beta_under), bottom of the conjugate band
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::string first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return c.name + " (" + c.detail + ")";
    return {};
  }
};

/// Conjugate strain pair at a common stress level C. `degenerate` marks the
/// band-boundary case where the pair collapses onto a critical strain.
struct ConjugatePair {
  double alpha = 0.0;  // strain on the left ascending branch
  double beta = 0.0;   // strain on the right ascending branch
  bool degenerate = false;
};

/// Non-monotone stress law sigma together with its derivative, its strain
/// energy density w (w' = sigma, w(0) = 0), and the critical thresholds.
/// Currently one family: the cubic sigma(xi) = xi^3 + c2*xi^2 + c1*xi.
/// Instances are immutable after construction and safe to share.
class StressModel {
 public:
  enum class Kind { Cubic };

  /// Builds a cubic law and eagerly runs the axiom checks; threshold data is
  /// computed at construction when the axioms hold.
  static StressModel cubic(double c2, double c1);

  Kind kind() const { return kind_; }
  double c2() const { return c2_; }
  double c1() const { return c1_; }

  double sigma(double xi) const { return ((xi + c2_) * xi + c1_) * xi; }
  double dsigma(double xi) const { return (3.0 * xi + 2.0 * c2_) * xi + c1_; }
  double potential(double xi) const {
    return ((0.25 * xi + c2_ / 3.0) * xi + 0.5 * c1_) * xi * xi;
  }

  const ValidationReport& validate() const { return report_; }
  bool valid() const { return report_.all_passed(); }

  /// Threshold data; requires the axiom checks to have passed.
  const CriticalData& critical() const;

  /// The two outer-branch strains with sigma == C, for C inside the
  /// conjugate band [sigma_under, sigma_bar]. Band endpoints are returned
  /// as degenerate pairs; levels outside raise OutOfBand.
  ConjugatePair conjugate_pair(double C) const;

 private:
  StressModel(Kind kind, double c2, double c1) : kind_(kind), c2_(c2), c1_(c1) {}
  void run_checks();

  Kind kind_;
  double c2_;
  double c1_;
  ValidationReport report_;
  std::optional<CriticalData> critical_;
};

/// Default law used throughout the tests and sample configs.
inline StressModel default_stress() { return StressModel::cubic(-3.0, 2.5); }

}  // namespace phasewave
