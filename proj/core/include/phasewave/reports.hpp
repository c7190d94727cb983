#pragma once

#include <string>
#include <vector>

#include "phasewave/discrete.hpp"
#include "phasewave/spectral.hpp"

namespace phasewave {

/// 17-significant-digit decimal, the round-trip-exact CSV number format.
std::string format_number(double value);

// --- steady solution reports -------------------------------------------

std::string steady_json(const std::vector<SteadySolution>& solutions, bool truncated);

struct SteadyParsed {
  std::vector<SteadySolution> solutions;
  bool truncated = false;
};
SteadyParsed read_steady_json(const std::string& text);

// --- spectrum reports ----------------------------------------------------

std::string spectrum_json(const SpectrumReport& report);

struct SpectrumParsed {
  std::string classification;
  std::vector<Complex> oracle;
  std::vector<Complex> mode_roots;
  double max_discrepancy = 0.0;
};
SpectrumParsed read_spectrum_json(const std::string& text);

std::string discrete_json(const SchemeGrid& grid, const DiscreteReport& report);

struct DiscreteParsed {
  std::string classification;
  double max_modulus = 0.0;
  std::vector<double> moduli;  // per mode, dominant factor first
};
DiscreteParsed read_discrete_json(const std::string& text);

// --- trajectory CSV -------------------------------------------------------

/// Header `t,u1,...,u{n-1},v1,...,v{n-1},V,dissipation`, one row per sample.
std::string trajectory_csv(const LatticeConfig& cfg, const Trajectory& traj);

struct TrajectoryParsed {
  std::vector<double> t;
  std::vector<std::vector<double>> u;
  std::vector<std::vector<double>> v;
  std::vector<double> energy;
  std::vector<double> dissipation;
};
TrajectoryParsed read_trajectory_csv(const std::string& text);

/// Header `p,u1,...,u{n-1},deviation_max`.
std::string discrete_csv(const DiscreteTrajectory& traj);

struct DiscreteTrajectoryParsed {
  std::vector<long long> steps;
  std::vector<std::vector<double>> levels;
  std::vector<double> deviation_max;
};
DiscreteTrajectoryParsed read_discrete_csv(const std::string& text);

// --- sweep CSV -------------------------------------------------------------

struct SweepRow {
  double param_value = 0.0;
  std::string classification;
  double measure = 0.0;  // max Re lambda (continuous) or max modulus (discrete)
  std::string agreement;
};

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(const std::string& text);

}  // namespace phasewave
