// Command-line front end: steady-solution enumeration, linear stability
// analysis, time integration, discrete-scheme classification, and parameter
// sweeps, all driven by one config file.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "phasewave/commands.hpp"
#include "phasewave/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Lattice simulator and stability analyzer for a nonlinear damped wave equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string selector = "uniphase";
  long long run_steps = -1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Path to the run configuration")->required();
    cmd->add_option("--out", out_path, "Output file path")->required();
  };

  CLI::App* steady = app.add_subcommand("steady", "Enumerate steady solutions (JSON)");
  add_common(steady);
  CLI::App* analyze = app.add_subcommand("analyze", "Linear stability spectrum (JSON)");
  add_common(analyze);
  analyze->add_option("--solution", selector,
                      "'uniphase' or an index into the steady-solution list");
  CLI::App* simulate = app.add_subcommand("simulate", "Integrate a perturbed state (CSV + summary)");
  add_common(simulate);
  CLI::App* discrete = app.add_subcommand("discrete", "Classify the discrete scheme (JSON)");
  add_common(discrete);
  discrete->add_option("--run", run_steps, "Also iterate the map for this many steps");
  CLI::App* sweep = app.add_subcommand("sweep", "Stability diagram over a parameter (CSV)");
  add_common(sweep);

  CLI11_PARSE(app, argc, argv);

  phasewave::RunConfig cfg;
  try {
    cfg = phasewave::load_config_file(config_path);
  } catch (const phasewave::Error& err) {
    std::cerr << "phasewave: " << err.what() << "\n";
    return phasewave::kExitConfig;
  }

  if (steady->parsed()) return phasewave::cmd_steady(cfg, out_path);
  if (analyze->parsed()) return phasewave::cmd_analyze(cfg, selector, out_path);
  if (simulate->parsed()) return phasewave::cmd_simulate(cfg, out_path);
  if (discrete->parsed()) return phasewave::cmd_discrete(cfg, out_path, run_steps);
  if (sweep->parsed()) return phasewave::cmd_sweep(cfg, out_path);
  return phasewave::kExitConfig;
}
