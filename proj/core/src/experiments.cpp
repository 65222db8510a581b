// SPDX-License-Identifier: Apache-2.0

#include "noma/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "noma/closedform.hpp"
#include "noma/frpa.hpp"
#include "noma/io.hpp"
#include "noma/powermin.hpp"
#include "noma/rates.hpp"

namespace noma::experiments {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw std::invalid_argument("csv: bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

SolveReport solve_power_min(const NetworkInstance& net) {
  const auto pm = powermin::run(net, PowerAllocation::zeros(net));
  SolveReport r;
  r.scheme = Scheme::PowerMin;
  r.order = pm.order;
  r.powers = pm.powers;
  r.rates = rates::achievable_rates(net, pm.powers, pm.order);
  r.trace = pm.total_power_trace;
  r.feasible = pm.status == powermin::Status::Converged;
  r.alpha = AlphaVector(std::vector<double>(net.num_cells(), 0.0));
  for (std::size_t b = 0; b < net.num_cells(); ++b) r.alpha[b] = cell_power(pm.powers, b) / net.max_power[b];
  if (r.feasible)
    for (const auto& row : r.rates)
      for (double v : row) r.sum_rate += v;
  if (!r.feasible) r.note = powermin::to_string(pm.status);
  r.oracle_evaluated = true;
  r.oracle_feasible = r.feasible;
  return r;
}

}  // namespace

const char* to_string(SweepKind k) noexcept {
  switch (k) {
    case SweepKind::UsersPerCell: return "users_per_cell";
    case SweepKind::MinRate: return "min_rate";
    case SweepKind::NoiseDbm: return "noise_dbm";
    case SweepKind::BsDistance: return "bs_distance";
  }
  return "unknown";
}

SweepKind parse_sweep_kind(std::string_view name) {
  for (SweepKind k : {SweepKind::UsersPerCell, SweepKind::MinRate, SweepKind::NoiseDbm, SweepKind::BsDistance})
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown sweep kind: " + std::string(name));
}

std::vector<Violation> validate(const ExperimentPlan& plan) {
  std::vector<Violation> v = scenario::validate(plan.scenario);
  if (plan.realizations < 1) v.push_back({"realizations", "must be >= 1"});
  if (plan.schemes.empty()) v.push_back({"schemes", "must not be empty"});
  if (plan.sweep.values.empty()) v.push_back({"sweep.values", "must not be empty"});
  if (!(plan.grid.eps_alpha > 0.0 && plan.grid.eps_alpha <= 1.0)) v.push_back({"grid.eps_alpha", "must lie in (0, 1]"});
  if (!(plan.jrpa.eps_s > 0.0)) v.push_back({"jrpa.eps_s", "must be > 0"});
  if (plan.workers < 1) v.push_back({"workers", "must be >= 1"});
  for (std::size_t k = 0; k < plan.sweep.values.size(); ++k) {
    try {
      const auto cfg = apply_sweep(plan.scenario, plan.sweep.kind, plan.sweep.values[k]);
      for (auto& e : scenario::validate(cfg)) v.push_back({"sweep.values[" + std::to_string(k) + "]", e.field + ": " + e.message});
    } catch (const std::invalid_argument& e) {
      v.push_back({"sweep.values[" + std::to_string(k) + "]", e.what()});
    }
  }
  return v;
}

scenario::ScenarioConfig apply_sweep(scenario::ScenarioConfig cfg, SweepKind kind, double value) {
  switch (kind) {
    case SweepKind::UsersPerCell: {
      if (!(value >= 1.0) || std::floor(value) != value) throw std::invalid_argument("users_per_cell sweep value must be a positive integer");
      cfg.users_macro = cfg.users_femto = static_cast<std::size_t>(value);
      break;
    }
    case SweepKind::MinRate: cfg.min_rate_macro = cfg.min_rate_femto = value; break;
    case SweepKind::NoiseDbm: cfg.noise_power_dbm = value; break;
    case SweepKind::BsDistance: cfg.bs_distance = value; break;
  }
  return cfg;
}

SolveReport solve(const NetworkInstance& net, Scheme scheme, const SolveSettings& settings) {
  switch (scheme) {
    case Scheme::JSPA: return jspa::solve_jspa(net, settings.grid);
    case Scheme::PowerMin: return solve_power_min(net);
    case Scheme::FullyDistributed: return jspa::solve_fully_distributed(net);
    case Scheme::SemiCentralized: return jspa::solve_semi_centralized(net, settings.grid);
    case Scheme::JRPA: {
      const DecodingOrder order = rates::cnr_order(net);
      SolveReport r = jrpa::solve_jrpa(net, order, settings.jrpa);
      r.oracle_evaluated = true;
      r.oracle_feasible = jrpa::jrpa_feasibility_lp(net, order).feasible;
      return r;
    }
    case Scheme::FRPA: {
      const DecodingOrder order = rates::cnr_order(net);
      SolveReport r = frpa::solve_frpa(net, order, settings.grid);
      r.oracle_evaluated = true;
      r.oracle_feasible = frpa::frpa_feasibility_lp(net, order).feasible;
      return r;
    }
  }
  throw std::invalid_argument("solve: unknown scheme");
}

bool in_outage(const SolveReport& report) {
  return report.oracle_evaluated ? !report.oracle_feasible : !report.feasible;
}

ExperimentError::ExperimentError(double sweep_value, std::size_t realization, const std::string& what)
    : std::runtime_error("sweep value " + fmt(sweep_value) + ", realization " + std::to_string(realization) + ": " +
                         what),
      sweep_value_(sweep_value),
      realization_(realization) {}

std::vector<RealizationOutcome> run_realizations(const ExperimentPlan& plan) {
  const auto problems = validate(plan);
  if (!problems.empty())
    throw std::invalid_argument("invalid plan: " + problems.front().field + ": " + problems.front().message);

  const std::size_t R = plan.realizations;
  const std::size_t total = plan.sweep.values.size() * R;
  std::vector<RealizationOutcome> out(total);
  std::vector<std::exception_ptr> errors(total);
  const SolveSettings settings{plan.grid, plan.jrpa};

  auto work = [&](std::size_t job) {
    RealizationOutcome& o = out[job];
    o.sweep_value = plan.sweep.values[job / R];
    o.index = job % R;
    try {
      const auto cfg = apply_sweep(plan.scenario, plan.sweep.kind, o.sweep_value);
      const NetworkInstance net = scenario::generate(cfg, o.index);
      o.psi = rates::count_ici_dependent_pairs(net);
      for (Scheme s : plan.schemes) o.reports.push_back(solve(net, s, settings));
    } catch (const std::exception& e) {
      errors[job] = std::make_exception_ptr(ExperimentError(o.sweep_value, o.index, e.what()));
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(plan.workers, total));
  if (workers == 1) {
    for (std::size_t job = 0; job < total; ++job) work(job);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t job; (job = next.fetch_add(1)) < total;) work(job);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<MetricsRow> aggregate(const ExperimentPlan& plan, const std::vector<RealizationOutcome>& outcomes) {
  std::vector<MetricsRow> rows;
  for (double value : plan.sweep.values) {
    for (std::size_t s = 0; s < plan.schemes.size(); ++s) {
      MetricsRow row;
      row.sweep_value = value;
      row.scheme = plan.schemes[s];
      double rate_sum = 0.0, psi_sum = 0.0;
      std::size_t alpha_count = 0;
      for (const auto& o : outcomes) {
        if (o.sweep_value != value) continue;
        const SolveReport& r = o.reports.at(s);
        ++row.realizations;
        psi_sum += static_cast<double>(o.psi);
        if (in_outage(r)) ++row.infeasible;
        if (r.feasible) {
          rate_sum += r.sum_rate;
          if (row.mean_alpha.empty()) row.mean_alpha.assign(r.alpha.size(), 0.0);
          for (std::size_t b = 0; b < r.alpha.size(); ++b) row.mean_alpha[b] += r.alpha[b];
          ++alpha_count;
        }
      }
      if (row.realizations > 0) {
        const double n = static_cast<double>(row.realizations);
        row.outage_probability = static_cast<double>(row.infeasible) / n;
        row.mean_sum_rate = rate_sum / n;
        row.mean_psi = psi_sum / n;
      }
      for (double& a : row.mean_alpha) a /= static_cast<double>(alpha_count);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<MetricsRow> run(const ExperimentPlan& plan) { return aggregate(plan, run_realizations(plan)); }

std::vector<ApproxGapRow> approximation_gap_study(const ExperimentPlan& plan,
                                                  const std::vector<double>& noise_sweep_dbm) {
  std::vector<ApproxGapRow> rows;
  for (double noise : noise_sweep_dbm) {
    scenario::ScenarioConfig cfg = plan.scenario;
    cfg.shadowing_enabled = false;
    cfg.noise_power_dbm = noise;
    ApproxGapRow tiers[2];
    tiers[0].tier = scenario::Tier::Macro;
    tiers[1].tier = scenario::Tier::Femto;
    for (auto& t : tiers) t.noise_dbm = noise;
    for (std::size_t k = 0; k < plan.realizations; ++k) {
      const NetworkInstance net = scenario::generate(cfg, k);
      const DecodingOrder order = rates::cnr_order(net);
      for (std::size_t b = 0; b < net.num_cells(); ++b) {
        ApproxGapRow& t = tiers[b == 0 ? 0 : 1];
        closedform::CellProblem cell;
        cell.budget = net.max_power[b];
        for (std::size_t u : order.order[b]) {
          cell.h_tilde.push_back(net.direct_gain[b][u] / net.noise_power[b][u]);
          cell.min_rate.push_back(net.min_rate[b][u]);
        }
        const auto exact = closedform::sumrate_powers(cell);
        if (!exact.feasible) {
          ++t.skipped;
          continue;
        }
        const auto approx = closedform::approx_sumrate_powers(cell);
        double diff = 0.0, norm = 0.0;
        for (std::size_t i = 0; i < exact.powers.size(); ++i) {
          diff += std::abs(exact.powers[i] - approx[i]);
          norm += std::abs(exact.powers[i]);
        }
        double se = 0.0, sa = 0.0;
        for (double r : closedform::cell_rates(cell, exact.powers)) se += r;
        for (double r : closedform::cell_rates(cell, approx)) sa += r;
        t.power_gap += norm > 0.0 ? diff / norm : 0.0;
        t.sum_rate_gap += se > 0.0 ? std::abs(se - sa) / se : 0.0;
        ++t.samples;
      }
    }
    for (auto& t : tiers) {
      if (t.samples > 0) {
        t.power_gap /= static_cast<double>(t.samples);
        t.sum_rate_gap /= static_cast<double>(t.samples);
      }
      rows.push_back(t);
    }
  }
  return rows;
}

std::string csv_header() {
  return "sweep_kind,sweep_value,scheme,realizations,infeasible,outage_probability,mean_sum_rate_bps_hz,mean_alpha,"
         "mean_psi";
}

std::string to_csv(const std::vector<MetricsRow>& rows, SweepKind kind) {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const auto& r : rows) {
    std::string alpha;
    for (std::size_t b = 0; b < r.mean_alpha.size(); ++b) alpha += (b ? ";" : "") + fmt(r.mean_alpha[b]);
    os << to_string(kind) << ',' << fmt(r.sweep_value) << ',' << to_string(r.scheme) << ',' << r.realizations << ','
       << r.infeasible << ',' << fmt(r.outage_probability) << ',' << fmt(r.mean_sum_rate) << ',' << alpha << ','
       << fmt(r.mean_psi) << '\n';
  }
  return os.str();
}

std::vector<MetricsRow> rows_from_csv(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line) || line != csv_header()) throw std::invalid_argument("csv: missing or unexpected header");
  std::vector<MetricsRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) throw std::invalid_argument("csv: expected 9 fields, got " + std::to_string(f.size()));
    MetricsRow r;
    r.sweep_value = parse_double(f[1]);
    r.scheme = parse_scheme(f[2]);
    r.realizations = std::stoull(f[3]);
    r.infeasible = std::stoull(f[4]);
    r.outage_probability = parse_double(f[5]);
    r.mean_sum_rate = parse_double(f[6]);
    if (!f[7].empty())
      for (const auto& a : split(f[7], ';')) r.mean_alpha.push_back(parse_double(a));
    r.mean_psi = parse_double(f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_csv(const std::vector<MetricsRow>& rows, SweepKind kind, const std::filesystem::path& path) {
  io::write_file(path, to_csv(rows, kind));
}

std::string rows_json(const std::vector<MetricsRow>& rows, SweepKind kind) {
  json j;
  j["format"] = "noma.metrics";
  j["sweep_kind"] = to_string(kind);
  j["rows"] = json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"sweep_value", r.sweep_value},
                         {"scheme", std::string(to_string(r.scheme))},
                         {"realizations", r.realizations},
                         {"infeasible", r.infeasible},
                         {"outage_probability", r.outage_probability},
                         {"mean_sum_rate_bps_hz", r.mean_sum_rate},
                         {"mean_alpha", r.mean_alpha},
                         {"mean_psi", r.mean_psi}});
  return j.dump(2) + "\n";
}

std::string approx_csv(const std::vector<ApproxGapRow>& rows) {
  std::ostringstream os;
  os << "noise_dbm,tier,samples,skipped,power_gap,sum_rate_gap\n";
  for (const auto& r : rows)
    os << fmt(r.noise_dbm) << ',' << (r.tier == scenario::Tier::Macro ? "macro" : "femto") << ',' << r.samples << ','
       << r.skipped << ',' << fmt(r.power_gap) << ',' << fmt(r.sum_rate_gap) << '\n';
  return os.str();
}

std::string approx_json(const std::vector<ApproxGapRow>& rows) {
  json j;
  j["format"] = "noma.approx_gap";
  j["rows"] = json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"noise_dbm", r.noise_dbm},
                         {"tier", r.tier == scenario::Tier::Macro ? "macro" : "femto"},
                         {"samples", r.samples},
                         {"skipped", r.skipped},
                         {"power_gap", r.power_gap},
                         {"sum_rate_gap", r.sum_rate_gap}});
  return j.dump(2) + "\n";
}

std::string manifest_json(const ExperimentPlan& plan) {
  json j;
  j["format"] = "noma.manifest";
  j["version"] = kVersion;
  j["scenario"] = json::parse(scenario::to_json(plan.scenario));
  j["seed"] = plan.scenario.seed;
  for (Scheme s : plan.schemes) j["schemes"].push_back(std::string(to_string(s)));
  j["sweep"] = {{"kind", to_string(plan.sweep.kind)}, {"values", plan.sweep.values}};
  j["realizations"] = plan.realizations;
  j["workers"] = plan.workers;
  j["grid"] = {{"eps_alpha", plan.grid.eps_alpha},
               {"use_alpha_min", plan.grid.use_alpha_min},
               {"max_samples", plan.grid.max_samples}};
  j["jrpa"] = {{"eps_s", plan.jrpa.eps_s},
               {"max_outer", plan.jrpa.max_outer},
               {"init", jrpa::to_string(plan.jrpa.init)},
               {"arf_linearization_point", plan.jrpa.arf_linearization_point},
               {"prune_sufficient_pairs", plan.jrpa.prune_sufficient_pairs}};
  return j.dump(2) + "\n";
}

}  // namespace noma::experiments
