#include "phasewave/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "phasewave/errors.hpp"

namespace phasewave {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

double parse_real(const std::string& value, int line) {
  try {
    size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) parse_error(line, "not a number: '" + value + "'");
    return parsed;
  } catch (const std::logic_error&) {
    parse_error(line, "not a number: '" + value + "'");
  }
}

int parse_int(const std::string& value, int line) {
  int parsed = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc() || ptr != value.data() + value.size())
    parse_error(line, "not an integer: '" + value + "'");
  return parsed;
}

std::string parse_string(const std::string& value) {
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
    return value.substr(1, value.size() - 2);
  return value;
}

void range_check(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::RangeError, what);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') parse_error(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section == "stress")
        cfg.stress.emplace();
      else if (section == "lattice")
        cfg.lattice.emplace();
      else if (section == "discrete")
        cfg.discrete.emplace();
      else if (section == "simulate")
        cfg.simulate.emplace();
      else if (section == "sweep")
        cfg.sweep.emplace();
      else
        parse_error(line_no, "unknown section '" + section + "'");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_error(line_no, "expected 'key = value'");
    if (section.empty()) parse_error(line_no, "key before any section header");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) parse_error(line_no, "expected 'key = value'");

    if (section == "stress") {
      auto& s = *cfg.stress;
      if (key == "kind")
        s.kind = parse_string(value);
      else if (key == "c2")
        s.c2 = parse_real(value, line_no);
      else if (key == "c1")
        s.c1 = parse_real(value, line_no);
      else
        parse_error(line_no, "unknown key '" + key + "' in [stress]");
    } else if (section == "lattice") {
      auto& s = *cfg.lattice;
      if (key == "n")
        s.n = parse_int(value, line_no);
      else if (key == "P")
        s.P = parse_real(value, line_no);
      else if (key == "eps")
        s.eps = parse_real(value, line_no);
      else
        parse_error(line_no, "unknown key '" + key + "' in [lattice]");
    } else if (section == "discrete") {
      auto& s = *cfg.discrete;
      if (key == "h2")
        s.h2 = parse_real(value, line_no);
      else if (key == "m")
        s.m = parse_int(value, line_no);
      else
        parse_error(line_no, "unknown key '" + key + "' in [discrete]");
    } else if (section == "simulate") {
      auto& s = *cfg.simulate;
      if (key == "dt")
        s.dt = parse_real(value, line_no);
      else if (key == "t_end")
        s.t_end = parse_real(value, line_no);
      else if (key == "perturb_mode")
        s.perturb_mode = parse_int(value, line_no);
      else if (key == "perturb_amp")
        s.perturb_amp = parse_real(value, line_no);
      else
        parse_error(line_no, "unknown key '" + key + "' in [simulate]");
    } else if (section == "sweep") {
      auto& s = *cfg.sweep;
      if (key == "param")
        s.param = parse_string(value);
      else if (key == "from")
        s.from = parse_real(value, line_no);
      else if (key == "to")
        s.to = parse_real(value, line_no);
      else if (key == "steps")
        s.steps = parse_int(value, line_no);
      else
        parse_error(line_no, "unknown key '" + key + "' in [sweep]");
    }
  }

  if (cfg.stress && cfg.stress->kind != "cubic")
    fail(ErrorCode::RangeError, "unsupported stress kind '" + cfg.stress->kind + "'");
  if (cfg.lattice) {
    range_check(cfg.lattice->n >= 2, "lattice n must be at least 2");
    range_check(cfg.lattice->P > 0.0, "boundary displacement P must be positive");
  }
  if (cfg.discrete) {
    range_check(cfg.discrete->m >= 1, "discrete m must be at least 1");
    if (cfg.discrete->h2) range_check(*cfg.discrete->h2 > 0.0 && *cfg.discrete->h2 < 1.0,
                                      "time step h2 must lie in (0,1)");
  }
  if (cfg.simulate) {
    if (cfg.simulate->dt) range_check(*cfg.simulate->dt > 0.0, "dt must be positive");
    range_check(cfg.simulate->t_end >= 0.0, "t_end must be nonnegative");
    range_check(cfg.simulate->perturb_mode >= 0, "perturb_mode must be nonnegative");
    range_check(cfg.simulate->perturb_amp >= 0.0, "perturb_amp must be nonnegative");
  }
  if (cfg.sweep) {
    range_check(cfg.sweep->steps >= 1, "sweep steps must be at least 1");
    const std::string& p = cfg.sweep->param;
    range_check(p == "eps" || p == "P" || p == "tau-scale" || p == "h2",
                "sweep param must be one of eps, P, tau-scale, h2");
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

StressModel build_stress(const RunConfig& cfg) {
  if (!cfg.stress) fail(ErrorCode::MissingSection, "config needs a [stress] section");
  StressModel model = StressModel::cubic(cfg.stress->c2, cfg.stress->c1);
  if (!model.valid())
    fail(ErrorCode::NoSpinodal,
         "stress law fails axiom check: " + model.validate().first_failure());
  return model;
}

LatticeConfig build_lattice(const RunConfig& cfg) {
  if (!cfg.lattice) fail(ErrorCode::MissingSection, "config needs a [lattice] section");
  LatticeConfig lattice;
  lattice.n = cfg.lattice->n;
  lattice.P = cfg.lattice->P;
  lattice.eps = cfg.lattice->eps;
  lattice.stress = build_stress(cfg);
  return lattice;
}

SchemeGrid build_grid(const RunConfig& cfg) {
  if (!cfg.discrete) fail(ErrorCode::MissingSection, "config needs a [discrete] section");
  if (!cfg.lattice) fail(ErrorCode::MissingSection, "config needs a [lattice] section");
  SchemeGrid grid;
  grid.n = cfg.lattice->n;
  grid.P = cfg.lattice->P;
  grid.eps = cfg.lattice->eps;
  grid.m = cfg.discrete->m;
  grid.h2 = cfg.discrete->h2 ? *cfg.discrete->h2 : 1.0 / cfg.discrete->m;
  grid.stress = build_stress(cfg);
  return grid;
}

}  // namespace phasewave
