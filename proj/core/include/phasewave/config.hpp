#pragma once

#include <optional>
#include <string>

#include "phasewave/discrete.hpp"
#include "phasewave/lattice.hpp"

namespace phasewave {

/// Parsed run configuration. Sections are optional at parse time; each
/// subcommand checks for the sections it needs.
struct RunConfig {
  struct Stress {
    std::string kind = "cubic";
    double c2 = 0.0;
    double c1 = 0.0;
  };
  struct Lattice {
    int n = 2;
    double P = 1.0;
    double eps = 0.0;
  };
  struct Discrete {
    std::optional<double> h2;
    int m = 2;
  };
  struct Simulate {
    std::optional<double> dt;  // absent: CFL-style heuristic
    double t_end = 1.0;
    int perturb_mode = 0;
    double perturb_amp = 0.0;  // relative to P
  };
  struct Sweep {
    std::string param;  // eps | P | tau-scale | h2
    double from = 0.0;
    double to = 0.0;
    int steps = 1;
  };

  std::optional<Stress> stress;
  std::optional<Lattice> lattice;
  std::optional<Discrete> discrete;
  std::optional<Simulate> simulate;
  std::optional<Sweep> sweep;
};

/// Line-oriented format: `[section]` headers, `key = value` pairs, `#` starts
/// a comment. Unknown sections or keys are errors (ParseError with the line
/// number); numeric ranges are validated (RangeError).
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

/// Section-dependent builders; raise MissingSection when required data is
/// absent and NoSpinodal when the stress law fails its axioms.
StressModel build_stress(const RunConfig& cfg);
LatticeConfig build_lattice(const RunConfig& cfg);
SchemeGrid build_grid(const RunConfig& cfg);

}  // namespace phasewave
