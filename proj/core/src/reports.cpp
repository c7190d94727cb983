#include "phasewave/reports.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "phasewave/errors.hpp"

namespace phasewave {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_to_json(const Complex& z) { return ordered_json::array({z.real(), z.imag()}); }

Complex complex_from_json(const ordered_json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

ordered_json solution_to_json(const SteadySolution& sol) {
  ordered_json j;
  j["kind"] = sol.kind == SteadyKind::Uniphase ? "Uniphase" : "TwoPhase";
  j["alpha"] = sol.alpha;
  j["beta"] = sol.beta;
  j["C"] = sol.C;
  j["k_alpha"] = sol.k_alpha;
  j["arrangement"] = sol.arrangement;
  j["u"] = sol.u;
  j["membership"] = sol.membership == Membership::EPlus ? "EPlus" : "EMinus";
  j["degenerate"] = sol.degenerate;
  return j;
}

SteadySolution solution_from_json(const ordered_json& j) {
  SteadySolution sol;
  sol.kind = j.at("kind").get<std::string>() == "Uniphase" ? SteadyKind::Uniphase
                                                           : SteadyKind::TwoPhase;
  sol.alpha = j.at("alpha").get<double>();
  sol.beta = j.at("beta").get<double>();
  sol.C = j.at("C").get<double>();
  sol.k_alpha = j.at("k_alpha").get<int>();
  sol.arrangement = j.at("arrangement").get<std::string>();
  sol.u = j.at("u").get<std::vector<double>>();
  sol.membership =
      j.at("membership").get<std::string>() == "EPlus" ? Membership::EPlus : Membership::EMinus;
  sol.degenerate = j.at("degenerate").get<bool>();
  return sol;
}

ordered_json mode_to_json(const ModeRoot& mode) {
  ordered_json j;
  j["k"] = mode.k;
  j["mu"] = mode.mu;
  j["quad"] = ordered_json::array(
      {complex_to_json(mode.a), complex_to_json(mode.b), complex_to_json(mode.c)});
  j["roots"] =
      ordered_json::array({complex_to_json(mode.root_plus), complex_to_json(mode.root_minus)});
  j["tag"] = to_string(mode.tag);
  return j;
}

ordered_json conditions_to_json(const std::vector<WindowCondition>& conditions) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : conditions) {
    ordered_json j;
    j["name"] = c.name;
    j["claim"] = c.claim;
    j["applicable"] = c.applicable;
    j["holds"] = c.holds;
    j["agrees_with_roots"] = c.agrees_with_roots;
    arr.push_back(std::move(j));
  }
  return arr;
}

ordered_json parse_or_fail(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::ParseError, "malformed JSON report");
  return j;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string steady_json(const std::vector<SteadySolution>& solutions, bool truncated) {
  ordered_json j;
  j["count"] = solutions.size();
  j["truncated"] = truncated;
  ordered_json arr = ordered_json::array();
  for (const auto& sol : solutions) arr.push_back(solution_to_json(sol));
  j["solutions"] = std::move(arr);
  return j.dump(2) + "\n";
}

SteadyParsed read_steady_json(const std::string& text) {
  const ordered_json j = parse_or_fail(text);
  SteadyParsed parsed;
  parsed.truncated = j.at("truncated").get<bool>();
  for (const auto& entry : j.at("solutions")) parsed.solutions.push_back(solution_from_json(entry));
  return parsed;
}

std::string spectrum_json(const SpectrumReport& report) {
  ordered_json j;
  j["solution"] = solution_to_json(report.solution);
  ordered_json modes = ordered_json::array();
  for (const auto& m : report.modes) modes.push_back(mode_to_json(m));
  j["modes"] = std::move(modes);
  j["classification"] = to_string(report.classification);
  ordered_json oracle = ordered_json::array();
  for (const auto& z : report.oracle) oracle.push_back(complex_to_json(z));
  j["oracle"] = std::move(oracle);
  j["max_discrepancy"] = report.max_discrepancy;
  j["degenerate"] = report.degenerate;
  j["paper_conditions"] = conditions_to_json(report.conditions);
  return j.dump(2) + "\n";
}

SpectrumParsed read_spectrum_json(const std::string& text) {
  const ordered_json j = parse_or_fail(text);
  SpectrumParsed parsed;
  parsed.classification = j.at("classification").get<std::string>();
  for (const auto& z : j.at("oracle")) parsed.oracle.push_back(complex_from_json(z));
  for (const auto& m : j.at("modes"))
    for (const auto& r : m.at("roots")) parsed.mode_roots.push_back(complex_from_json(r));
  parsed.max_discrepancy = j.at("max_discrepancy").get<double>();
  return parsed;
}

std::string discrete_json(const SchemeGrid& grid, const DiscreteReport& report) {
  ordered_json j;
  j["grid"] = {{"n", grid.n}, {"h1", grid.h1()}, {"h2", grid.h2}, {"m", grid.m},
               {"eps", grid.eps}, {"P", grid.P}};
  ordered_json modes = ordered_json::array();
  for (const auto& m : report.modes) {
    ordered_json entry = mode_to_json(m);
    entry["modulus"] =
        ordered_json::array({std::abs(m.root_plus), std::abs(m.root_minus)});
    modes.push_back(std::move(entry));
  }
  j["modes"] = std::move(modes);
  j["classification"] = to_string(report.classification);
  j["max_modulus"] = report.max_modulus;
  j["paper_conditions"] = conditions_to_json(report.conditions);
  return j.dump(2) + "\n";
}

DiscreteParsed read_discrete_json(const std::string& text) {
  const ordered_json j = parse_or_fail(text);
  DiscreteParsed parsed;
  parsed.classification = j.at("classification").get<std::string>();
  parsed.max_modulus = j.at("max_modulus").get<double>();
  for (const auto& m : j.at("modes"))
    for (const auto& value : m.at("modulus")) parsed.moduli.push_back(value.get<double>());
  return parsed;
}

std::string trajectory_csv(const LatticeConfig& cfg, const Trajectory& traj) {
  std::ostringstream out;
  out << "t";
  for (int k = 1; k <= cfg.interior(); ++k) out << ",u" << k;
  for (int k = 1; k <= cfg.interior(); ++k) out << ",v" << k;
  out << ",V,dissipation\n";
  for (const auto& state : traj.samples) {
    out << format_number(state.t);
    for (double x : state.u) out << ',' << format_number(x);
    for (double x : state.v) out << ',' << format_number(x);
    out << ',' << format_number(total_energy(cfg, state));
    out << ',' << format_number(dissipation_rate(cfg, state));
    out << '\n';
  }
  return out.str();
}

TrajectoryParsed read_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::ParseError, "empty trajectory CSV");
  size_t columns = 1;
  for (char ch : line) columns += ch == ',';
  if (columns < 5 || (columns - 3) % 2 != 0)
    fail(ErrorCode::ParseError, "unexpected trajectory CSV header");
  const size_t m = (columns - 3) / 2;

  TrajectoryParsed parsed;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    if (values.size() != columns) fail(ErrorCode::ParseError, "ragged trajectory CSV row");
    parsed.t.push_back(values[0]);
    parsed.u.emplace_back(values.begin() + 1, values.begin() + 1 + m);
    parsed.v.emplace_back(values.begin() + 1 + m, values.begin() + 1 + 2 * m);
    parsed.energy.push_back(values[1 + 2 * m]);
    parsed.dissipation.push_back(values[2 + 2 * m]);
  }
  return parsed;
}

std::string discrete_csv(const DiscreteTrajectory& traj) {
  std::ostringstream out;
  const size_t m = traj.levels.empty() ? 0 : traj.levels.front().size();
  out << "p";
  for (size_t k = 1; k <= m; ++k) out << ",u" << k;
  out << ",deviation_max\n";
  for (size_t i = 0; i < traj.levels.size(); ++i) {
    out << traj.start_p + static_cast<long long>(i);
    for (double x : traj.levels[i]) out << ',' << format_number(x);
    out << ',' << format_number(traj.deviation_max[i]) << '\n';
  }
  return out.str();
}

DiscreteTrajectoryParsed read_discrete_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::ParseError, "empty discrete CSV");
  size_t columns = 1;
  for (char ch : line) columns += ch == ',';
  if (columns < 2) fail(ErrorCode::ParseError, "unexpected discrete CSV header");

  DiscreteTrajectoryParsed parsed;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    parsed.steps.push_back(std::stoll(cell));
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    if (values.size() + 1 != columns) fail(ErrorCode::ParseError, "ragged discrete CSV row");
    parsed.deviation_max.push_back(values.back());
    values.pop_back();
    parsed.levels.push_back(std::move(values));
  }
  return parsed;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "param_value,classification,max_re_lambda_or_max_modulus,paper_condition_agreement\n";
  for (const auto& row : rows) {
    out << format_number(row.param_value) << ',' << row.classification << ','
        << format_number(row.measure) << ',' << row.agreement << '\n';
  }
  return out.str();
}

std::vector<SweepRow> read_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::ParseError, "empty sweep CSV");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    SweepRow r;
    std::string cell;
    std::getline(row, cell, ',');
    r.param_value = std::stod(cell);
    std::getline(row, r.classification, ',');
    std::getline(row, cell, ',');
    r.measure = std::stod(cell);
    std::getline(row, r.agreement, ',');
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace phasewave
