// SPDX-License-Identifier: Apache-2.0

#include "noma/frpa.hpp"

#include <algorithm>
#include <limits>

#include "noma/closedform.hpp"
#include "noma/rates.hpp"

namespace noma::frpa {

namespace {

/// Flat LP variable index per (cell, user); variables are p / P^max_b.
struct Layout {
  std::vector<std::size_t> offset;
  std::size_t total = 0;

  explicit Layout(const NetworkInstance& net) {
    for (std::size_t b = 0; b < net.num_cells(); ++b) {
      offset.push_back(total);
      total += net.num_users(b);
    }
  }
  std::size_t at(std::size_t b, std::size_t i) const { return offset[b] + i; }
};

double hat(const NetworkInstance& net, std::size_t b, std::size_t i) { return net.direct_gain[b][i] / net.noise_power[b][i]; }

double hat_cross(const NetworkInstance& net, std::size_t j, std::size_t b, std::size_t i) {
  return net.cross(j, b, i) / net.noise_power[b][i];
}

LpVerdict verdict_from(const NetworkInstance& net, const Layout& lay, const solvers::LpResult& res) {
  LpVerdict v;
  v.status = res.status;
  v.powers = PowerAllocation::zeros(net);
  v.feasible = res.status == solvers::LpStatus::Optimal;
  v.powers.feasible_cell.assign(net.num_cells(), v.feasible);
  if (!v.feasible) return v;
  for (std::size_t b = 0; b < net.num_cells(); ++b)
    for (std::size_t i = 0; i < net.num_users(b); ++i) {
      v.powers.power[b][i] = res.x[lay.at(b, i)] * net.max_power[b];
      v.total_power += v.powers.power[b][i];
    }
  return v;
}

}  // namespace

bool sic_necessary_holds(const NetworkInstance& net, const AlphaVector& alpha, const DecodingOrder& order) {
  const rates::EffectiveCinr cinr = rates::effective_cinr(net, alpha);
  for (std::size_t b = 0; b < net.num_cells(); ++b) {
    const auto& cell = order.order[b];
    // Checking adjacent positions suffices: <= is transitive.
    for (std::size_t p = 0; p + 1 < cell.size(); ++p)
      if (!(cinr(b, cell[p]) <= cinr(b, cell[p + 1]))) return false;
  }
  return true;
}

FrpaSample evaluate_sample(const NetworkInstance& net, const DecodingOrder& order, const AlphaVector& alpha) {
  FrpaSample s;
  s.alpha = alpha;
  s.sic_ok = sic_necessary_holds(net, alpha, order);
  if (!s.sic_ok) return s;
  const auto d = jspa::evaluate_alpha(net, alpha, order);
  if (d.feasible) s.value = d.value;
  return s;
}

SolveReport solve_frpa(const NetworkInstance& net, const DecodingOrder& order, const jspa::GridSettings& grid) {
  if (!order.is_valid(net.users_per_cell)) throw std::invalid_argument("solve_frpa: invalid decoding order");
  std::vector<std::vector<double>> axes(net.num_cells(), jspa::alpha_axis(grid.eps_alpha));
  const jspa::SampleEvaluator eval = [&](const AlphaVector& a) {
    const FrpaSample s = evaluate_sample(net, order, a);
    if (!s.sic_ok) return jspa::SampleOutcome{jspa::SampleStatus::SicRejected, 0.0};
    if (!s.value) return jspa::SampleOutcome{jspa::SampleStatus::PowerInfeasible, 0.0};
    return jspa::SampleOutcome{jspa::SampleStatus::Feasible, *s.value};
  };
  const auto g = jspa::grid_search(axes, eval, grid.workers, grid.max_samples);

  SolveReport r;
  if (g.found) {
    r = jspa::report_from_sample(net, Scheme::FRPA, g.best_alpha, jspa::evaluate_alpha(net, g.best_alpha, order));
    r.trace = {g.best_value};
  } else {
    r.scheme = Scheme::FRPA;
    r.alpha = AlphaVector::ones(net.num_cells());
    r.order = order;
    r.powers = PowerAllocation::zeros(net);
    r.powers.feasible_cell.assign(net.num_cells(), false);
    r.rates = rates::achievable_rates(net, r.powers, order);
  }
  r.samples_evaluated = g.evaluated;
  r.samples_sic_rejected = g.sic_rejected;
  r.samples_power_infeasible = g.power_infeasible;
  return r;
}

SolveReport solve_frpa(const NetworkInstance& net, const jspa::GridSettings& grid) {
  return solve_frpa(net, rates::cnr_order(net), grid);
}

LpVerdict frpa_feasibility_lp(const NetworkInstance& net, const DecodingOrder& order) {
  if (!order.is_valid(net.users_per_cell)) throw std::invalid_argument("frpa_feasibility_lp: invalid decoding order");
  const Layout lay(net);
  const std::size_t B = net.num_cells();
  solvers::LinearProgram lp;
  lp.objective.assign(lay.total, 0.0);
  for (std::size_t b = 0; b < B; ++b)
    for (std::size_t i = 0; i < net.num_users(b); ++i) lp.objective[lay.at(b, i)] = net.max_power[b];

  for (std::size_t b = 0; b < B; ++b) {
    std::vector<double> row(lay.total, 0.0);
    for (std::size_t i = 0; i < net.num_users(b); ++i) row[lay.at(b, i)] = 1.0;
    lp.add_row(std::move(row), solvers::RowSense::LessEqual, 1.0);
  }

  for (std::size_t b = 0; b < B; ++b) {
    const auto& cell = order.order[b];
    for (std::size_t pos = 0; pos < cell.size(); ++pos) {
      const std::size_t i = cell[pos];
      const double beta = closedform::powermin_beta(net.min_rate[b][i]);
      if (beta == 0.0) continue;
      // Capacity rate of user i at rate R: p_i - beta*(intra + ICI/h_i) >= beta/h_i, gains noise-normalized.
      const double hi = hat(net, b, i);
      std::vector<double> row(lay.total, 0.0);
      row[lay.at(b, i)] = net.max_power[b];
      for (std::size_t q = pos + 1; q < cell.size(); ++q) row[lay.at(b, cell[q])] = -beta * net.max_power[b];
      for (std::size_t j = 0; j < B; ++j) {
        if (j == b) continue;
        const double c = -beta * hat_cross(net, j, b, i) / hi * net.max_power[j];
        for (std::size_t l = 0; l < net.num_users(j); ++l) row[lay.at(j, l)] = c;
      }
      lp.add_row(std::move(row), solvers::RowSense::GreaterEqual, beta / hi);
    }
    // SIC rows: sum_j P_j H_{j,b,i,k} <= h_k - h_i with
    // H_{j,b,i,k} = h_{j,b,k} h_{b,i} - h_{j,b,i} h_{b,k} (noise-normalized).
    for (std::size_t p = 0; p < cell.size(); ++p)
      for (std::size_t q = p + 1; q < cell.size(); ++q) {
        const std::size_t i = cell[p], k = cell[q];
        const double hi = hat(net, b, i), hk = hat(net, b, k);
        const double scale = 1.0 / (hi * hk);
        std::vector<double> row(lay.total, 0.0);
        for (std::size_t j = 0; j < B; ++j) {
          if (j == b) continue;
          const double H = hat_cross(net, j, b, k) * hi - hat_cross(net, j, b, i) * hk;
          for (std::size_t l = 0; l < net.num_users(j); ++l) row[lay.at(j, l)] = H * net.max_power[j] * scale;
        }
        lp.add_row(std::move(row), solvers::RowSense::LessEqual, (hk - hi) * scale);
      }
  }
  return verdict_from(net, lay, solvers::solve_lp(lp));
}

double combined_power_cap(const NetworkInstance& net, std::size_t b, const DecodingOrder& order,
                          const PowerAllocation& powers) {
  double cap = net.max_power.at(b);
  std::vector<double> totals(net.num_cells());
  for (std::size_t l = 0; l < net.num_cells(); ++l) totals[l] = cell_power(powers, l);
  for (std::size_t j = 0; j < net.num_cells(); ++j) {
    if (j == b) continue;
    const auto& cell = order.order[j];
    for (std::size_t p = 0; p < cell.size(); ++p)
      for (std::size_t q = p + 1; q < cell.size(); ++q) {
        const std::size_t i = cell[p], k = cell[q];
        const double hi = hat(net, j, i), hk = hat(net, j, k);
        auto H = [&](std::size_t l) { return hat_cross(net, l, j, k) * hi - hat_cross(net, l, j, i) * hk; };
        const double Hb = H(b);
        if (!(Hb > 0.0)) continue;
        double slack = hk - hi;
        for (std::size_t l = 0; l < net.num_cells(); ++l)
          if (l != b && l != j) slack -= totals[l] * H(l);
        cap = std::min(cap, slack / Hb);
      }
  }
  return cap;
}

}  // namespace noma::frpa
