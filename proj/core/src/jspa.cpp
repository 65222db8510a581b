// SPDX-License-Identifier: Apache-2.0

#include "noma/jspa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "noma/closedform.hpp"
#include "noma/powermin.hpp"
#include "noma/rates.hpp"

namespace noma::jspa {

namespace {

struct Chunk {
  bool found = false;
  std::size_t best_index = 0;
  double best_value = 0.0;
  std::size_t evaluated = 0;
  std::size_t sic_rejected = 0;
  std::size_t power_infeasible = 0;
};

AlphaVector alpha_at(const std::vector<std::vector<double>>& axes, std::size_t index) {
  AlphaVector a(std::vector<double>(axes.size()));
  for (std::size_t d = axes.size(); d-- > 0;) {
    a[d] = axes[d][index % axes[d].size()];
    index /= axes[d].size();
  }
  return a;
}

Chunk scan(const std::vector<std::vector<double>>& axes, const SampleEvaluator& evaluate, std::size_t begin,
           std::size_t end) {
  Chunk c;
  for (std::size_t idx = begin; idx < end; ++idx) {
    const SampleOutcome o = evaluate(alpha_at(axes, idx));
    ++c.evaluated;
    if (o.status == SampleStatus::SicRejected) {
      ++c.sic_rejected;
      continue;
    }
    if (o.status == SampleStatus::PowerInfeasible) {
      ++c.power_infeasible;
      continue;
    }
    if (!c.found || o.value > c.best_value) {
      c.found = true;
      c.best_value = o.value;
      c.best_index = idx;
    }
  }
  return c;
}

SolveReport infeasible_report(const NetworkInstance& net, Scheme scheme) {
  SolveReport r;
  r.scheme = scheme;
  r.alpha = AlphaVector::ones(net.num_cells());
  r.order = rates::cinr_order(net, r.alpha);
  r.powers = PowerAllocation::zeros(net);
  r.powers.feasible_cell.assign(net.num_cells(), false);
  r.rates = rates::achievable_rates(net, r.powers, r.order);
  r.feasible = false;
  return r;
}

SolveReport run_grid(const NetworkInstance& net, Scheme scheme, const std::vector<std::vector<double>>& axes,
                     const GridSettings& grid) {
  const SampleEvaluator eval = [&net](const AlphaVector& a) {
    const SampleDetail d = evaluate_alpha(net, a);
    return SampleOutcome{d.feasible ? SampleStatus::Feasible : SampleStatus::PowerInfeasible, d.value};
  };
  const GridSearchResult g = grid_search(axes, eval, grid.workers, grid.max_samples);
  SolveReport r = g.found ? report_from_sample(net, scheme, g.best_alpha, evaluate_alpha(net, g.best_alpha))
                          : infeasible_report(net, scheme);
  r.samples_evaluated = g.evaluated;
  r.samples_power_infeasible = g.power_infeasible;
  r.samples_sic_rejected = g.sic_rejected;
  if (g.found) r.trace = {g.best_value};
  return r;
}

}  // namespace

std::vector<double> alpha_axis(double eps, double lower) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps_alpha must lie in (0, 1]");
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / eps));
  std::vector<double> axis;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double v = static_cast<double>(k) / static_cast<double>(steps);
    if (v >= lower - 1e-9) axis.push_back(v);
  }
  if (axis.empty()) axis.push_back(1.0);
  return axis;
}

GridSearchResult grid_search(const std::vector<std::vector<double>>& axes, const SampleEvaluator& evaluate,
                             std::size_t workers, std::size_t max_samples) {
  std::size_t total = 1;
  for (const auto& ax : axes) {
    if (ax.empty()) throw std::invalid_argument("grid_search: empty axis");
    if (total > max_samples / ax.size() + 1) {
      total = max_samples + 1;
      break;
    }
    total *= ax.size();
  }
  if (total > max_samples)
    throw std::length_error("alpha grid exceeds the sample cap of " + std::to_string(max_samples) +
                            " samples; use the semi-centralized scheme or a coarser eps_alpha");

  workers = std::max<std::size_t>(1, std::min(workers, total));
  std::vector<Chunk> chunks(workers);
  if (workers == 1) {
    chunks[0] = scan(axes, evaluate, 0, total);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = total * w / workers;
      const std::size_t end = total * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { chunks[w] = scan(axes, evaluate, begin, end); });
    }
    for (auto& t : pool) t.join();
  }

  GridSearchResult res;
  std::size_t best_index = 0;
  for (const Chunk& c : chunks) {  // chunks are in index order: strict > keeps the first tie
    res.evaluated += c.evaluated;
    res.sic_rejected += c.sic_rejected;
    res.power_infeasible += c.power_infeasible;
    if (c.found && (!res.found || c.best_value > res.best_value)) {
      res.found = true;
      res.best_value = c.best_value;
      best_index = c.best_index;
    }
  }
  if (res.found) res.best_alpha = alpha_at(axes, best_index);
  return res;
}

SampleDetail evaluate_alpha(const NetworkInstance& net, const AlphaVector& alpha) {
  return evaluate_alpha(net, alpha, rates::cinr_order(net, alpha));
}

SampleDetail evaluate_alpha(const NetworkInstance& net, const AlphaVector& alpha, const DecodingOrder& order) {
  const rates::EffectiveCinr cinr = rates::effective_cinr(net, alpha);
  SampleDetail d;
  d.order = order;
  d.powers = PowerAllocation::zeros(net);
  d.feasible = true;
  for (std::size_t b = 0; b < net.num_cells(); ++b) {
    closedform::CellProblem cell;
    cell.budget = alpha[b] * net.max_power[b];
    for (std::size_t u : order.order[b]) {
      cell.h_tilde.push_back(cinr(b, u));
      cell.min_rate.push_back(net.min_rate[b][u]);
    }
    const auto cp = closedform::sumrate_powers(cell);
    d.powers.feasible_cell[b] = cp.feasible;
    if (!cp.feasible) d.feasible = false;
    for (std::size_t pos = 0; pos < cp.powers.size(); ++pos) d.powers.power[b][order.order[b][pos]] = cp.powers[pos];
    d.value += closedform::cell_optimal_value(cell, cp.powers.empty() ? 0.0 : cp.powers.back());
  }
  return d;
}

SolveReport report_from_sample(const NetworkInstance& net, Scheme scheme, const AlphaVector& alpha,
                               const SampleDetail& sample) {
  SolveReport r;
  r.scheme = scheme;
  r.alpha = alpha;
  r.order = sample.order;
  r.powers = sample.powers;
  r.rates = rates::achievable_rates(net, sample.powers, sample.order);
  r.sum_rate = sample.feasible ? sample.value : 0.0;
  r.feasible = sample.feasible;
  return r;
}

SolveReport solve_jspa(const NetworkInstance& net, const GridSettings& grid) {
  const auto pm = powermin::run(net, PowerAllocation::zeros(net));
  const bool oracle = pm.status == powermin::Status::Converged;

  std::vector<std::vector<double>> axes;
  SolveReport r;
  if (grid.use_alpha_min && !oracle) {
    r = infeasible_report(net, Scheme::JSPA);
    r.note = std::string("power minimization: ") + powermin::to_string(pm.status);
  } else {
    for (std::size_t b = 0; b < net.num_cells(); ++b)
      axes.push_back(alpha_axis(grid.eps_alpha, grid.use_alpha_min ? pm.alpha_min[b] : 0.0));
    r = run_grid(net, Scheme::JSPA, axes, grid);
  }
  r.oracle_evaluated = true;
  r.oracle_feasible = oracle;
  return r;
}

SolveReport solve_fully_distributed(const NetworkInstance& net) {
  const AlphaVector ones = AlphaVector::ones(net.num_cells());
  SolveReport r = report_from_sample(net, Scheme::FullyDistributed, ones, evaluate_alpha(net, ones));
  r.samples_evaluated = 1;
  r.samples_power_infeasible = r.feasible ? 0 : 1;
  if (r.feasible) r.trace = {r.sum_rate};
  return r;
}

SolveReport solve_semi_centralized(const NetworkInstance& net, const GridSettings& grid) {
  std::vector<std::vector<double>> axes;
  for (std::size_t b = 0; b < net.num_cells(); ++b)
    axes.push_back(b == 0 ? alpha_axis(grid.eps_alpha) : std::vector<double>{1.0});
  return run_grid(net, Scheme::SemiCentralized, axes, grid);
}

}  // namespace noma::jspa
