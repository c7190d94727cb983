#include <doctest.h>

#include <cmath>

#include "phasewave/config.hpp"
#include "phasewave/reports.hpp"
#include "phasewave/steady.hpp"

using namespace phasewave;

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(
      "# stress law\n"
      "[stress]\n"
      "kind = \"cubic\"\n"
      "c2 = -3.0\n"
      "c1 = 2.5\n"
      "\n"
      "[lattice]\n"
      "n = 2\n"
      "P = 1.0   # boundary displacement\n"
      "eps = 0.1\n");
  REQUIRE(cfg.lattice.has_value());
  CHECK(cfg.lattice->n == 2);
  CHECK(cfg.lattice->P == 1.0);
  CHECK(cfg.lattice->eps == 0.1);
  REQUIRE(cfg.stress.has_value());
  CHECK(cfg.stress->c2 == -3.0);
  CHECK(build_stress(cfg).valid());
}

TEST_CASE("config errors carry line numbers and codes") {
  try {
    parse_config("n = 2\n");
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::ParseError);
    CHECK(std::string(err.what()).find("line 1") != std::string::npos);
  }

  try {
    parse_config("[lattice]\nn = 1\nP = 1.0\n");
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::RangeError);
  }

  CHECK_THROWS_AS(parse_config("[lattice]\nbogus = 3\n"), Error);
  CHECK_THROWS_AS(parse_config("[mystery]\n"), Error);
  CHECK_THROWS_AS(parse_config("[lattice]\nn 2\n"), Error);
  CHECK_THROWS_AS(parse_config("[sweep]\nparam = voltage\nsteps = 3\n"), Error);

  try {
    build_grid(parse_config("[stress]\nc2 = -3\nc1 = 2.5\n[lattice]\nn = 2\nP = 1\n"));
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::MissingSection);
  }
}

TEST_CASE("grid defaults h2 to 1/m") {
  const RunConfig cfg = parse_config(
      "[stress]\nc2 = -3\nc1 = 2.5\n[lattice]\nn = 4\nP = 0.4\n[discrete]\nm = 8\n");
  const SchemeGrid grid = build_grid(cfg);
  CHECK(grid.h2 == doctest::Approx(0.125));
  CHECK(grid.m == 8);
}

TEST_CASE("trajectory CSV round-trips exactly") {
  LatticeConfig cfg;
  cfg.n = 4;
  cfg.P = 0.4;
  cfg.eps = 0.1;
  const LatticeState state0 = sine_mode_state(cfg, 1, 0.01);
  const Trajectory traj = integrate(cfg, state0, 0.01, 0.2);

  const std::string text = trajectory_csv(cfg, traj);
  const TrajectoryParsed parsed = read_trajectory_csv(text);
  REQUIRE(parsed.t.size() == traj.samples.size());
  for (size_t i = 0; i < parsed.t.size(); ++i) {
    CHECK(parsed.t[i] == traj.samples[i].t);
    for (int j = 0; j < cfg.interior(); ++j) {
      CHECK(parsed.u[i][j] == traj.samples[i].u[j]);
      CHECK(parsed.v[i][j] == traj.samples[i].v[j]);
    }
    CHECK(parsed.energy[i] == total_energy(cfg, traj.samples[i]));
    CHECK(parsed.dissipation[i] == dissipation_rate(cfg, traj.samples[i]));
  }

  // Byte-identical on re-emission.
  CHECK(trajectory_csv(cfg, traj) == text);
}

TEST_CASE("steady JSON round-trips exactly") {
  LatticeConfig cfg;
  cfg.n = 4;
  cfg.P = 1.0;
  std::vector<SteadySolution> solutions;
  solutions.push_back(uniphase(cfg));
  const Enumeration families = enumerate_two_phase(cfg);
  for (const auto& sol : families.solutions) solutions.push_back(sol);

  const std::string text = steady_json(solutions, families.truncated);
  const SteadyParsed parsed = read_steady_json(text);
  REQUIRE(parsed.solutions.size() == solutions.size());
  for (size_t i = 0; i < solutions.size(); ++i) {
    CHECK(parsed.solutions[i].alpha == solutions[i].alpha);
    CHECK(parsed.solutions[i].beta == solutions[i].beta);
    CHECK(parsed.solutions[i].C == solutions[i].C);
    CHECK(parsed.solutions[i].arrangement == solutions[i].arrangement);
    CHECK(parsed.solutions[i].u == solutions[i].u);
    CHECK(parsed.solutions[i].membership == solutions[i].membership);
  }
  CHECK(steady_json(solutions, families.truncated) == text);
}

TEST_CASE("spectrum JSON round-trips the eigenvalues exactly") {
  LatticeConfig cfg;
  cfg.n = 4;
  cfg.P = 1.0;
  cfg.eps = 0.5;
  const SpectrumReport report = uniphase_spectrum(cfg, cfg.P);
  const std::string text = spectrum_json(report);
  const SpectrumParsed parsed = read_spectrum_json(text);
  CHECK(parsed.classification == std::string(to_string(report.classification)));
  REQUIRE(parsed.oracle.size() == report.oracle.size());
  for (size_t i = 0; i < parsed.oracle.size(); ++i) CHECK(parsed.oracle[i] == report.oracle[i]);
  CHECK(parsed.max_discrepancy == report.max_discrepancy);
  CHECK(spectrum_json(report) == text);
}

TEST_CASE("discrete report JSON round-trips the moduli exactly") {
  SchemeGrid grid;
  grid.n = 4;
  grid.h2 = 0.5;
  grid.P = 0.4;
  grid.eps = 0.05;
  const DiscreteReport report = classify_discrete_uniphase(grid);
  const std::string text = discrete_json(grid, report);
  const DiscreteParsed parsed = read_discrete_json(text);
  CHECK(parsed.classification == std::string(to_string(report.classification)));
  CHECK(parsed.max_modulus == report.max_modulus);
  REQUIRE(parsed.moduli.size() == 2 * report.modes.size());
  for (size_t i = 0; i < report.modes.size(); ++i) {
    CHECK(parsed.moduli[2 * i] == std::abs(report.modes[i].root_plus));
    CHECK(parsed.moduli[2 * i + 1] == std::abs(report.modes[i].root_minus));
  }
  CHECK(discrete_json(grid, report) == text);
}

TEST_CASE("discrete CSV round-trips exactly") {
  SchemeGrid grid;
  grid.n = 4;
  grid.h2 = 0.5;
  grid.P = 0.4;
  grid.eps = 0.05;
  const DiscreteTrajectory traj = run_discrete(grid, discrete_sine_state(grid, 1, 1e-4), 20);
  const std::string text = discrete_csv(traj);
  const DiscreteTrajectoryParsed parsed = read_discrete_csv(text);
  REQUIRE(parsed.steps.size() == traj.levels.size());
  for (size_t i = 0; i < parsed.steps.size(); ++i) {
    CHECK(parsed.steps[i] == traj.start_p + static_cast<long long>(i));
    CHECK(parsed.levels[i] == traj.levels[i]);
    CHECK(parsed.deviation_max[i] == traj.deviation_max[i]);
  }
  CHECK(discrete_csv(traj) == text);
}

TEST_CASE("number formatting is 17-significant-digit round-trip") {
  for (double value : {0.1, -2.251665545793554, 1e-17, 3.0, 0.4082482904638630}) {
    const std::string text = format_number(value);
    CHECK(std::stod(text) == value);
  }
}
