#pragma once

#include <string>

#include "phasewave/config.hpp"

namespace phasewave {

/// Exit codes shared by every subcommand: 0 success, 2 configuration or
/// validation error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Enumerates the steady solutions (uniphase first) into a JSON file.
int cmd_steady(const RunConfig& cfg, const std::string& out_path);

/// Spectrum report for `uniphase` or a 0-based index into the cmd_steady
/// solution list (index 0 being the uniphase state).
int cmd_analyze(const RunConfig& cfg, const std::string& selector, const std::string& out_path);

/// Integrates a sine-mode perturbation; writes the trajectory CSV to
/// out_path and a measurement summary to out_path + ".summary.json".
int cmd_simulate(const RunConfig& cfg, const std::string& out_path);

/// Root-modulus classification of the discrete scheme; with run_steps >= 0
/// also iterates the map and writes out_path + ".run.csv".
int cmd_discrete(const RunConfig& cfg, const std::string& out_path, long long run_steps = -1);

/// Stability diagram over eps, P, tau-scale (continuous) or h2 (discrete);
/// rows in ascending parameter order.
int cmd_sweep(const RunConfig& cfg, const std::string& out_path);

}  // namespace phasewave
