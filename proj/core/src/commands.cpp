#include "phasewave/commands.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "phasewave/errors.hpp"
#include "phasewave/reports.hpp"

namespace phasewave {
namespace {

using ordered_json = nlohmann::ordered_json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::MissingSection:
    case ErrorCode::RangeError:
    case ErrorCode::UnknownSelector:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NoSpinodal:
      return kExitConfig;
    default:
      return kExitNumerical;
  }
}

template <typename Fn>
int run_guarded(Fn&& fn) {
  try {
    fn();
    return kExitOk;
  } catch (const Error& err) {
    std::cerr << "phasewave: " << err.what() << "\n";
    return exit_code_for(err.code());
  } catch (const std::exception& err) {
    std::cerr << "phasewave: " << err.what() << "\n";
    return kExitNumerical;
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::RangeError, "cannot write output file '" + path + "'");
  out << content;
}

// Projection of the displacement deviation onto the seeded sine mode.
std::vector<double> mode_projection(const LatticeConfig& cfg, const Trajectory& traj, int mode) {
  std::vector<double> proj(traj.samples.size(), 0.0);
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    double sum = 0.0;
    for (int j = 1; j <= cfg.interior(); ++j) {
      const double steady = j * cfg.h1() * cfg.P;
      sum += (traj.samples[i].u[j - 1] - steady) *
             std::sin(std::numbers::pi * mode * j / cfg.n);
    }
    proj[i] = sum;
  }
  return proj;
}

// Mean half-period distance between interpolated zero crossings.
double measure_period(const std::vector<double>& t, const std::vector<double>& proj) {
  std::vector<double> crossings;
  for (size_t i = 1; i < proj.size(); ++i) {
    if (proj[i - 1] == 0.0) continue;
    if ((proj[i - 1] < 0.0) != (proj[i] < 0.0)) {
      const double w = proj[i - 1] / (proj[i - 1] - proj[i]);
      crossings.push_back(t[i - 1] + w * (t[i] - t[i - 1]));
    }
  }
  if (crossings.size() < 3) return std::nan("");
  return 2.0 * (crossings.back() - crossings.front()) / (crossings.size() - 1);
}

// Envelope decay exponent: least-squares slope of log extremal amplitudes,
// falling back to a direct log-amplitude fit when nothing oscillates.
double measure_decay(const std::vector<double>& t, const std::vector<double>& proj) {
  std::vector<double> ft, fy;
  for (size_t i = 1; i + 1 < proj.size(); ++i) {
    const double a = std::abs(proj[i]);
    if (a > std::abs(proj[i - 1]) && a >= std::abs(proj[i + 1]) && a > 0.0) {
      ft.push_back(t[i]);
      fy.push_back(std::log(a));
    }
  }
  if (ft.size() < 3) {
    ft.clear();
    fy.clear();
    for (size_t i = proj.size() / 2; i < proj.size(); ++i) {
      if (std::abs(proj[i]) > 0.0) {
        ft.push_back(t[i]);
        fy.push_back(std::log(std::abs(proj[i])));
      }
    }
  }
  if (ft.size() < 2) return std::nan("");
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (size_t i = 0; i < ft.size(); ++i) {
    st += ft[i];
    sy += fy[i];
    stt += ft[i] * ft[i];
    sty += ft[i] * fy[i];
  }
  const double nfit = static_cast<double>(ft.size());
  const double denom = nfit * stt - st * st;
  if (denom == 0.0) return std::nan("");
  return (nfit * sty - st * sy) / denom;
}

double max_real_part(const std::vector<ModeRoot>& modes) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& m : modes)
    worst = std::max({worst, m.root_plus.real(), m.root_minus.real()});
  return worst;
}

std::string condition_agreement(const std::vector<WindowCondition>& conditions) {
  int applicable = 0, agreeing = 0;
  for (const auto& c : conditions) {
    if (!c.applicable) continue;
    ++applicable;
    agreeing += c.agrees_with_roots;
  }
  if (applicable == 0) return "n/a";
  return std::to_string(agreeing) + "/" + std::to_string(applicable);
}

}  // namespace

int cmd_steady(const RunConfig& cfg, const std::string& out_path) {
  return run_guarded([&] {
    const LatticeConfig lattice = build_lattice(cfg);
    std::vector<SteadySolution> solutions;
    solutions.push_back(uniphase(lattice));
    Enumeration families = enumerate_two_phase(lattice);
    for (auto& sol : families.solutions) solutions.push_back(std::move(sol));
    write_file(out_path, steady_json(solutions, families.truncated));
  });
}

int cmd_analyze(const RunConfig& cfg, const std::string& selector, const std::string& out_path) {
  return run_guarded([&] {
    const LatticeConfig lattice = build_lattice(cfg);
    SpectrumReport report;
    if (selector == "uniphase") {
      report = uniphase_spectrum(lattice, lattice.P);
    } else {
      size_t used = 0;
      long index = -1;
      try {
        index = std::stol(selector, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used != selector.size() || index < 0)
        fail(ErrorCode::UnknownSelector, "selector must be 'uniphase' or a solution index");
      if (index == 0) {
        report = uniphase_spectrum(lattice, lattice.P);
      } else {
        const Enumeration families = enumerate_two_phase(lattice);
        if (static_cast<size_t>(index) > families.solutions.size())
          fail(ErrorCode::UnknownSelector,
               "solution index " + selector + " out of range (have " +
                   std::to_string(families.solutions.size() + 1) + " solutions)");
        report = classify_two_phase(lattice, families.solutions[index - 1]);
      }
    }
    write_file(out_path, spectrum_json(report));
  });
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_path) {
  return run_guarded([&] {
    if (!cfg.simulate) fail(ErrorCode::MissingSection, "config needs a [simulate] section");
    const LatticeConfig lattice = build_lattice(cfg);
    const RunConfig::Simulate& sim = *cfg.simulate;
    const double amp = sim.perturb_amp * lattice.P;
    const LatticeState state0 = sine_mode_state(lattice, sim.perturb_mode, amp);
    const double dt = sim.dt ? *sim.dt : default_time_step(lattice, state0);
    const Trajectory traj = integrate(lattice, state0, dt, sim.t_end);
    write_file(out_path, trajectory_csv(lattice, traj));

    ordered_json summary;
    summary["n"] = lattice.n;
    summary["P"] = lattice.P;
    summary["eps"] = lattice.eps;
    summary["dt"] = dt;
    summary["t_end"] = sim.t_end;
    summary["perturb_mode"] = sim.perturb_mode;
    summary["perturb_amp"] = sim.perturb_amp;
    summary["samples"] = traj.samples.size();
    summary["truncated"] = traj.truncated;

    double initial_dev = 0.0, max_dev = 0.0;
    for (const auto& state : traj.samples) {
      double dev = 0.0;
      for (int j = 1; j <= lattice.interior(); ++j)
        dev = std::max(dev, std::abs(state.u[j - 1] - j * lattice.h1() * lattice.P));
      if (&state == &traj.samples.front()) initial_dev = dev;
      max_dev = std::max(max_dev, dev);
    }
    summary["growth_detected"] =
        traj.truncated || (initial_dev > 0.0 && max_dev > 1e3 * initial_dev);

    if (sim.perturb_mode >= 1) {
      std::vector<double> times(traj.samples.size());
      for (size_t i = 0; i < traj.samples.size(); ++i) times[i] = traj.samples[i].t;
      const std::vector<double> proj = mode_projection(lattice, traj, sim.perturb_mode);
      const double tau = lattice.stress.dsigma(lattice.P);
      if (lattice.eps == 0.0) {
        const double period = measure_period(times, proj);
        if (std::isfinite(period)) summary["measured_period"] = period;
        if (tau > 0.0)
          summary["reference_period"] =
              uniphase_periods(lattice, lattice.P)[sim.perturb_mode - 1];
      } else {
        const double rate = measure_decay(times, proj);
        if (std::isfinite(rate)) summary["measured_decay_rate"] = rate;
        const SpectrumReport spectrum = uniphase_spectrum_tau(lattice.n, lattice.eps, tau);
        const ModeRoot& mode = spectrum.modes[sim.perturb_mode - 1];
        summary["reference_decay_rate"] =
            std::max(mode.root_plus.real(), mode.root_minus.real());
      }
    }
    write_file(out_path + ".summary.json", summary.dump(2) + "\n");
  });
}

int cmd_discrete(const RunConfig& cfg, const std::string& out_path, long long run_steps) {
  return run_guarded([&] {
    const SchemeGrid grid = build_grid(cfg);
    const DiscreteReport report = classify_discrete_uniphase(grid);

    ordered_json extra;
    if (run_steps >= 0) {
      const int mode = cfg.simulate ? std::max(1, cfg.simulate->perturb_mode) : 1;
      const double amp = cfg.simulate && cfg.simulate->perturb_amp > 0.0
                             ? cfg.simulate->perturb_amp * grid.P
                             : 1e-8 * std::max(1.0, grid.P);
      const DiscreteState seed = discrete_sine_state(grid, std::min(mode, grid.interior()), amp);
      const DiscreteTrajectory traj = run_discrete(grid, seed, run_steps);
      write_file(out_path + ".run.csv", discrete_csv(traj));

      extra["steps"] = run_steps;
      extra["truncated"] = traj.truncated;
      const size_t count = traj.deviation_max.size();
      if (count >= 3) {
        const size_t mid = count / 2;
        const size_t last = count - 1;
        if (traj.deviation_max[mid] > 0.0 && traj.deviation_max[last] > 0.0 && last > mid) {
          extra["growth_ratio"] =
              std::pow(traj.deviation_max[last] / traj.deviation_max[mid],
                       1.0 / static_cast<double>(last - mid));
        }
      }
    }

    std::string json_text = discrete_json(grid, report);
    if (!extra.is_null()) {
      ordered_json j = ordered_json::parse(json_text);
      j["run"] = extra;
      json_text = j.dump(2) + "\n";
    }
    write_file(out_path, json_text);
  });
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_path) {
  return run_guarded([&] {
    if (!cfg.sweep) fail(ErrorCode::MissingSection, "config needs a [sweep] section");
    const LatticeConfig lattice = build_lattice(cfg);
    const RunConfig::Sweep& sweep = *cfg.sweep;

    std::vector<double> values(static_cast<size_t>(sweep.steps));
    for (int i = 0; i < sweep.steps; ++i)
      values[i] = sweep.steps == 1
                      ? sweep.from
                      : sweep.from + (sweep.to - sweep.from) * i / (sweep.steps - 1);

    SchemeGrid grid;
    if (sweep.param == "h2") {
      grid = build_grid(cfg);
      for (double h2 : values)
        if (!(h2 > 0.0 && h2 < 1.0))
          fail(ErrorCode::RangeError, "swept h2 values must lie in (0,1)");
    }

    const double tau0 = lattice.stress.dsigma(lattice.P);
    auto evaluate = [&](double value) {
      SweepRow row;
      row.param_value = value;
      if (sweep.param == "h2") {
        SchemeGrid local = grid;
        local.h2 = value;
        const DiscreteReport report = classify_discrete_uniphase_tau(local, tau0);
        row.classification = to_string(report.classification);
        row.measure = report.max_modulus;
        row.agreement = condition_agreement(report.conditions);
      } else {
        double eps = lattice.eps;
        double tau = tau0;
        if (sweep.param == "eps")
          eps = value;
        else if (sweep.param == "P")
          tau = lattice.stress.dsigma(value);
        else  // tau-scale
          tau = value * tau0;
        const SpectrumReport report = uniphase_spectrum_tau(lattice.n, eps, tau);
        row.classification = to_string(report.classification);
        row.measure = max_real_part(report.modes);
        row.agreement = "n/a";
      }
      return row;
    };

    // Grid points are independent; fan out and fill indexed slots so the
    // output order never depends on scheduling.
    std::vector<SweepRow> rows(values.size());
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::atomic<size_t> cursor{0};
    std::vector<std::future<void>> tasks;
    tasks.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      tasks.push_back(std::async(std::launch::async, [&] {
        for (size_t i = cursor.fetch_add(1); i < values.size(); i = cursor.fetch_add(1))
          rows[i] = evaluate(values[i]);
      }));
    }
    for (auto& task : tasks) task.get();

    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.param_value < b.param_value; });
    write_file(out_path, sweep_csv(rows));
  });
}

}  // namespace phasewave
