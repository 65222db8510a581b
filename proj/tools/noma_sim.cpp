// SPDX-License-Identifier: Apache-2.0
//
// noma_sim: scenario generation, single-instance solves, sweeps and traces.
//
// Scenario precedence: built-in defaults < --config file < --set key=value
// (in the order given) < --seed.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noma/experiments.hpp"
#include "noma/io.hpp"
#include "noma/jrpa.hpp"
#include "noma/powermin.hpp"
#include "noma/rates.hpp"

namespace {

using namespace noma;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;
constexpr int kFault = 3;

/// Bad input supplied by the user; maps to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string instance;
  std::string out;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::uint64_t index = 0;
  std::string scheme = "jspa";
  double eps_alpha = 1e-2;
  std::size_t realizations = 200;
  std::size_t workers = 1;
  bool csv = false;
  std::string sweep_kind = "min_rate";
  std::vector<double> values{1.0};
  std::vector<std::string> schemes{"jspa", "jrpa", "frpa"};
  std::vector<double> noise_dbm{-140, -120, -100, -94};
  std::string init = "mre";
  double eps_s = 0.1;
  int verbose = 0;
};

scenario::ScenarioConfig load_scenario(const Options& o, bool require_config) {
  scenario::ScenarioConfig cfg;
  if (!o.config.empty()) {
    std::string text;
    try {
      text = io::read_file(o.config);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    try {
      cfg = scenario::config_from_json(text);
    } catch (const std::invalid_argument& e) {
      throw UsageError(o.config + ": " + e.what());
    }
  } else if (require_config) {
    throw UsageError("--config is required");
  }
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
    try {
      scenario::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (o.seed) cfg.seed = *o.seed;
  const auto problems = scenario::validate(cfg);
  if (!problems.empty()) throw UsageError("invalid scenario: " + problems.front().field + ": " + problems.front().message);
  return cfg;
}

NetworkInstance load_instance(const Options& o) {
  if (!o.instance.empty()) {
    std::string text;
    try {
      text = io::read_file(o.instance);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    try {
      return io::network_from_json(text);
    } catch (const std::invalid_argument& e) {
      throw UsageError(o.instance + ": " + e.what());
    }
  }
  if (o.config.empty()) throw UsageError("either --instance or --config is required");
  return scenario::generate(load_scenario(o, true), o.index);
}

experiments::SolveSettings settings_of(const Options& o) {
  experiments::SolveSettings s;
  s.grid.eps_alpha = o.eps_alpha;
  s.jrpa.eps_s = o.eps_s;
  try {
    s.jrpa.init = jrpa::parse_init(o.init);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return s;
}

Scheme scheme_of(const std::string& name) {
  try {
    return parse_scheme(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty())
    std::cout << text;
  else
    io::write_file(o.out, text);
}

void print_summary(const SolveReport& r, std::ostream& os) {
  os << "scheme    " << to_string(r.scheme) << "\n";
  os << "feasible  " << (r.feasible ? "yes" : "no") << "\n";
  if (r.oracle_evaluated) os << "oracle    " << (r.oracle_feasible ? "feasible" : "infeasible") << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r.sum_rate);
  os << "sum-rate  " << buf << " bps/Hz\n";
  for (std::size_t b = 0; b < r.alpha.size(); ++b) {
    std::snprintf(buf, sizeof buf, "%.4f", r.alpha[b]);
    os << "cell " << b << "    alpha " << buf << "  order";
    if (b < r.order.order.size())
      for (std::size_t u : r.order.order[b]) os << ' ' << u;
    os << "\n";
  }
  if (!r.note.empty()) os << "note      " << r.note << "\n";
}

int cmd_generate(const Options& o) {
  const auto cfg = load_scenario(o, true);
  emit(o, io::to_json(scenario::generate(cfg, o.index)) + "\n");
  return kOk;
}

int cmd_solve(const Options& o) {
  const Scheme scheme = scheme_of(o.scheme);
  const auto settings = settings_of(o);
  const NetworkInstance net = load_instance(o);
  const SolveReport r = experiments::solve(net, scheme, settings);
  if (o.out.empty()) {
    print_summary(r, std::cout);
    if (o.verbose > 0) std::cout << io::to_json(r) << "\n";
  } else {
    print_summary(r, std::cout);
    io::write_file(o.out, io::to_json(r) + "\n");
  }
  return r.feasible ? kOk : kInfeasible;
}

experiments::ExperimentPlan plan_of(const Options& o) {
  experiments::ExperimentPlan plan;
  plan.scenario = load_scenario(o, true);
  plan.schemes.clear();
  for (const auto& s : o.schemes) plan.schemes.push_back(scheme_of(s));
  try {
    plan.sweep.kind = experiments::parse_sweep_kind(o.sweep_kind);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  plan.sweep.values = o.values;
  plan.realizations = o.realizations;
  plan.workers = o.workers;
  const auto s = settings_of(o);
  plan.grid = s.grid;
  plan.jrpa = s.jrpa;
  const auto problems = experiments::validate(plan);
  if (!problems.empty()) throw UsageError("invalid plan: " + problems.front().field + ": " + problems.front().message);
  return plan;
}

int cmd_sweep(const Options& o) {
  const auto plan = plan_of(o);
  const auto rows = experiments::run(plan);
  emit(o, o.csv ? experiments::to_csv(rows, plan.sweep.kind) : experiments::rows_json(rows, plan.sweep.kind));
  if (!o.out.empty()) io::write_file(o.out + ".manifest.json", experiments::manifest_json(plan));
  return kOk;
}

int cmd_approx(const Options& o) {
  const auto plan = plan_of(o);
  const auto rows = experiments::approximation_gap_study(plan, o.noise_dbm);
  if (o.csv || o.out.empty()) {
    emit(o, experiments::approx_csv(rows));
  } else {
    emit(o, experiments::approx_json(rows));
  }
  return kOk;
}

int cmd_trace(const Options& o) {
  const Scheme scheme = scheme_of(o.scheme);
  const auto settings = settings_of(o);
  const NetworkInstance net = load_instance(o);
  std::ostringstream os;
  bool feasible = false;
  if (scheme == Scheme::JRPA) {
    const auto res = jrpa::run_jrpa(net, rates::cnr_order(net), settings.jrpa);
    os << "iteration,sum_rate_bps_hz\n";
    for (std::size_t t = 0; t < res.report.trace.size(); ++t) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t + 1, res.report.trace[t]);
      os << buf;
    }
    feasible = res.report.feasible;
  } else if (scheme == Scheme::PowerMin) {
    const auto res = powermin::run(net, PowerAllocation::zeros(net));
    os << "iteration,total_power_w\n";
    for (std::size_t t = 0; t < res.total_power_trace.size(); ++t) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t + 1, res.total_power_trace[t]);
      os << buf;
    }
    feasible = res.status == powermin::Status::Converged;
  } else {
    throw UsageError("trace supports --scheme jrpa or powermin");
  }
  emit(o, os.str());
  return feasible ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-cell NOMA power allocation simulator"};
  app.require_subcommand(1);
  Options o;

  auto scenario_flags = [&](CLI::App* c) {
    c->add_option("--config", o.config, "Scenario config (JSON)");
    c->add_option("--set", o.overrides, "Scenario override key=value (repeatable)")->take_all();
    c->add_option("--seed", o.seed, "Base seed");
    c->add_option("--out", o.out, "Output file (default stdout)");
    c->add_flag("-v,--verbose", o.verbose, "More output");
  };
  auto solver_flags = [&](CLI::App* c) {
    c->add_option("--eps-alpha", o.eps_alpha, "Alpha grid step")->check(CLI::Range(1e-6, 1.0));
    c->add_option("--eps-s", o.eps_s, "JRPA stopping threshold (bps/Hz)")->check(CLI::PositiveNumber);
    c->add_option("--init", o.init, "JRPA initialization: mre, arf, epa");
  };

  auto* gen = app.add_subcommand("generate", "Write one network instance as JSON");
  scenario_flags(gen);
  gen->add_option("--index", o.index, "Realization index");

  auto* solve = app.add_subcommand("solve", "Solve one instance and print a report");
  scenario_flags(solve);
  solver_flags(solve);
  solve->add_option("--instance", o.instance, "Network instance (JSON); overrides --config");
  solve->add_option("--index", o.index, "Realization index when generating from --config");
  solve->add_option("--scheme", o.scheme, "jspa, jrpa, frpa, powermin, fully-distributed, semi-centralized");

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over one scenario parameter");
  scenario_flags(sweep);
  solver_flags(sweep);
  sweep->add_option("--sweep", o.sweep_kind, "users_per_cell, min_rate, noise_dbm, bs_distance");
  sweep->add_option("--values", o.values, "Sweep values")->delimiter(',');
  sweep->add_option("--scheme", o.schemes, "Schemes to run")->delimiter(',');
  sweep->add_option("--realizations", o.realizations, "Realizations per sweep value")->check(CLI::PositiveNumber);
  sweep->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_flag("--csv", o.csv, "Write CSV instead of JSON");

  auto* approx = app.add_subcommand("approx-study", "Exact against approximate sum-rate powers");
  scenario_flags(approx);
  approx->add_option("--noise-dbm", o.noise_dbm, "Noise powers (dBm)")->delimiter(',');
  approx->add_option("--realizations", o.realizations, "Realizations per noise value")->check(CLI::PositiveNumber);
  approx->add_flag("--csv", o.csv, "Write CSV instead of JSON");

  auto* trace = app.add_subcommand("trace", "Per-iteration convergence of jrpa or powermin");
  scenario_flags(trace);
  solver_flags(trace);
  trace->add_option("--instance", o.instance, "Network instance (JSON); overrides --config");
  trace->add_option("--index", o.index, "Realization index when generating from --config");
  trace->add_option("--scheme", o.scheme, "jrpa or powermin")->default_str("jrpa");
  o.scheme = "jspa";

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (trace->parsed() && trace->count("--scheme") == 0) o.scheme = "jrpa";
    if (gen->parsed()) return cmd_generate(o);
    if (solve->parsed()) return cmd_solve(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (approx->parsed()) return cmd_approx(o);
    if (trace->parsed()) return cmd_trace(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFault;
  }
  return kUsage;
}
