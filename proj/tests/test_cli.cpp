#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phasewave/commands.hpp"
#include "phasewave/reports.hpp"

using namespace phasewave;
namespace fs = std::filesystem;

namespace {

fs::path out_dir() {
  const fs::path dir = fs::temp_directory_path() / "phasewave_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string base_config(int n, double P, double eps) {
  std::ostringstream out;
  out.precision(17);
  out << "[stress]\nkind = cubic\nc2 = -3.0\nc1 = 2.5\n"
      << "[lattice]\nn = " << n << "\nP = " << P << "\neps = " << eps << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("steady subcommand produces the solution census") {
  const fs::path out = out_dir() / "steady.json";

  CHECK(cmd_steady(parse_config(base_config(2, 1.0, 0.0)), out.string()) == kExitOk);
  SteadyParsed parsed = read_steady_json(slurp(out));
  CHECK(parsed.solutions.size() == 3);
  CHECK(parsed.solutions[0].kind == SteadyKind::Uniphase);

  CHECK(cmd_steady(parse_config(base_config(2, 0.1, 0.0)), out.string()) == kExitOk);
  parsed = read_steady_json(slurp(out));
  CHECK(parsed.solutions.size() == 1);

  const std::string monotone =
      "[stress]\nkind = cubic\nc2 = 0\nc1 = 1\n[lattice]\nn = 2\nP = 1.0\neps = 0\n";
  CHECK(cmd_steady(parse_config(monotone), out.string()) == kExitConfig);
}

TEST_CASE("analyze subcommand classifies and honors the selector") {
  const fs::path out = out_dir() / "spectrum.json";

  CHECK(cmd_analyze(parse_config(base_config(4, 0.4, 0.1)), "uniphase", out.string()) == kExitOk);
  CHECK(read_spectrum_json(slurp(out)).classification == "AsymptoticallyStable");

  CHECK(cmd_analyze(parse_config(base_config(4, 1.0, 0.1)), "uniphase", out.string()) == kExitOk);
  SpectrumParsed parsed = read_spectrum_json(slurp(out));
  CHECK(parsed.classification == "Hyperbolic");
  for (size_t i = 0; i < parsed.mode_roots.size(); i += 2)
    CHECK(parsed.mode_roots[i].real() * parsed.mode_roots[i + 1].real() < 0.0);

  CHECK(cmd_analyze(parse_config(base_config(2, 1.0, 0.05)), "1", out.string()) == kExitOk);
  const nlohmann::json two_phase = nlohmann::json::parse(slurp(out));
  CHECK(two_phase.at("solution").at("kind") == "TwoPhase");
  CHECK(two_phase.at("paper_conditions").size() == 11);

  CHECK(cmd_analyze(parse_config(base_config(2, 1.0, 0.05)), "7", out.string()) == kExitConfig);
  CHECK(cmd_analyze(parse_config(base_config(2, 1.0, 0.05)), "first", out.string()) ==
        kExitConfig);
}

TEST_CASE("simulate subcommand measures periods and decay rates") {
  const double P = 1.0 - std::sqrt(0.5);  // tau = 1

  // Undamped: period of mode 1 for n=2 is pi sqrt(2)/2.
  const fs::path out = out_dir() / "trajectory.csv";
  std::string cfg_text = base_config(2, P, 0.0) +
                         "[simulate]\ndt = 0.001\nt_end = 23.0\nperturb_mode = 1\n"
                         "perturb_amp = 1e-4\n";
  REQUIRE(cmd_simulate(parse_config(cfg_text), out.string()) == kExitOk);
  nlohmann::json summary = nlohmann::json::parse(slurp(out.string() + ".summary.json"));
  const double reference = 2.221441469079183;
  CHECK(summary.at("reference_period").get<double>() ==
        doctest::Approx(reference).epsilon(1e-12));
  CHECK(std::abs(summary.at("measured_period").get<double>() - reference) < 0.005 * reference);
  CHECK(!summary.at("truncated").get<bool>());

  // Light damping: measured envelope rate tracks the mode's real part -0.4.
  cfg_text = base_config(2, P, 0.1) +
             "[simulate]\ndt = 0.001\nt_end = 12.0\nperturb_mode = 1\nperturb_amp = 1e-3\n";
  REQUIRE(cmd_simulate(parse_config(cfg_text), out.string()) == kExitOk);
  summary = nlohmann::json::parse(slurp(out.string() + ".summary.json"));
  const double rate = summary.at("measured_decay_rate").get<double>();
  const double rate_ref = summary.at("reference_decay_rate").get<double>();
  CHECK(rate_ref == doctest::Approx(-0.4).epsilon(1e-12));
  CHECK(std::abs(rate - rate_ref) < 0.05 * std::abs(rate_ref));

  // Negative damping: growth is a finding, not a failure.
  cfg_text = base_config(2, P, -0.1) +
             "[simulate]\ndt = 0.005\nt_end = 150.0\nperturb_mode = 1\nperturb_amp = 1e-6\n";
  REQUIRE(cmd_simulate(parse_config(cfg_text), out.string()) == kExitOk);
  summary = nlohmann::json::parse(slurp(out.string() + ".summary.json"));
  CHECK(summary.at("growth_detected").get<bool>());
}

TEST_CASE("discrete subcommand classification, singular exit, and run") {
  const fs::path out = out_dir() / "discrete.json";

  // Marginal grid.
  std::string cfg_text = base_config(2, 1.0 - std::sqrt(0.5), 0.0) + "[discrete]\nh2 = 0.5\nm = 2\n";
  REQUIRE(cmd_discrete(parse_config(cfg_text), out.string()) == kExitOk);
  nlohmann::json report = nlohmann::json::parse(slurp(out));
  CHECK(report.at("classification") == "Marginal");
  CHECK(report.at("modes").at(0).contains("modulus"));

  // Excluded damping value h1^2/(h2 mu_1) = -0.25.
  cfg_text = base_config(2, 1.0, -0.25) + "[discrete]\nh2 = 0.5\nm = 2\n";
  CHECK(cmd_discrete(parse_config(cfg_text), out.string()) == kExitNumerical);

  // Unstable grid with a run: reported growth ratio approximates max |lambda|.
  cfg_text = base_config(2, 2.2516648189186454, 0.0) + "[discrete]\nh2 = 0.9\nm = 2\n" +
             "[simulate]\nt_end = 1\nperturb_mode = 1\nperturb_amp = 1e-13\n";
  REQUIRE(cmd_discrete(parse_config(cfg_text), out.string(), 10) == kExitOk);
  report = nlohmann::json::parse(slurp(out));
  CHECK(report.at("classification") == "Unstable");
  const double growth = report.at("run").at("growth_ratio").get<double>();
  CHECK(std::abs(growth - report.at("max_modulus").get<double>()) <
        0.05 * report.at("max_modulus").get<double>());
  CHECK(fs::exists(out.string() + ".run.csv"));
}

TEST_CASE("sweep subcommand stability diagrams") {
  const fs::path out = out_dir() / "sweep.csv";

  // eps from -0.2 to 0.5 in 71 points: the growth measure changes sign at 0.
  std::string cfg_text = base_config(4, 0.4, 0.0) +
                         "[sweep]\nparam = eps\nfrom = -0.2\nto = 0.5\nsteps = 71\n";
  REQUIRE(cmd_sweep(parse_config(cfg_text), out.string()) == kExitOk);
  const std::string first_bytes = slurp(out);
  std::vector<SweepRow> rows = read_sweep_csv(first_bytes);
  REQUIRE(rows.size() == 71);
  for (const auto& row : rows) {
    if (row.param_value < 0.0) {
      CHECK(row.measure > 0.0);
      CHECK(row.classification == "Unstable");
    } else if (row.param_value > 0.0) {
      CHECK(row.measure < 0.0);
      CHECK(row.classification == "AsymptoticallyStable");
    } else {
      CHECK(row.measure == 0.0);
      CHECK(row.classification == "Center");
    }
  }

  // Determinism: identical config produces identical bytes.
  REQUIRE(cmd_sweep(parse_config(cfg_text), out.string()) == kExitOk);
  CHECK(slurp(out) == first_bytes);

  // P sweep: hyperbolic exactly on the falling branch of the stress law.
  cfg_text = base_config(4, 0.4, 0.1) + "[sweep]\nparam = P\nfrom = 0.19\nto = 1.81\nsteps = 55\n";
  REQUIRE(cmd_sweep(parse_config(cfg_text), out.string()) == kExitOk);
  rows = read_sweep_csv(slurp(out));
  const CriticalData crit = default_stress().critical();
  for (const auto& row : rows) {
    const bool inside = row.param_value > crit.alpha_bar && row.param_value < crit.beta_under;
    CHECK((row.classification == "Hyperbolic") == inside);
  }

  // Single-point sweep.
  cfg_text = base_config(4, 0.4, 0.1) + "[sweep]\nparam = eps\nfrom = 0.1\nto = 0.1\nsteps = 1\n";
  REQUIRE(cmd_sweep(parse_config(cfg_text), out.string()) == kExitOk);
  CHECK(read_sweep_csv(slurp(out)).size() == 1);

  // Discrete h2 sweep carries the condition-agreement column.
  cfg_text = base_config(4, 0.4, 0.1) + "[discrete]\nm = 4\n" +
             "[sweep]\nparam = h2\nfrom = 0.2\nto = 0.8\nsteps = 4\n";
  REQUIRE(cmd_sweep(parse_config(cfg_text), out.string()) == kExitOk);
  rows = read_sweep_csv(slurp(out));
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) CHECK(row.agreement != "n/a");

  // tau-scale sweep crosses from stable to saddle as the scale turns negative.
  cfg_text = base_config(4, 0.4, 0.1) +
             "[sweep]\nparam = tau-scale\nfrom = -1.0\nto = 1.0\nsteps = 5\n";
  REQUIRE(cmd_sweep(parse_config(cfg_text), out.string()) == kExitOk);
  rows = read_sweep_csv(slurp(out));
  CHECK(rows.front().classification == "Hyperbolic");
  CHECK(rows.back().classification == "AsymptoticallyStable");
}
