// SPDX-License-Identifier: Apache-2.0

#include "noma/powermin.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "noma/closedform.hpp"
#include "noma/rates.hpp"

namespace noma::powermin {

namespace {

void sweep_cell(const NetworkInstance& net, PowerAllocation& p, DecodingOrder& order, std::size_t b) {
  const std::size_t n = net.num_users(b);
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i)
    h[i] = net.direct_gain[b][i] / (rates::ici_power(net, p, b, i) + net.noise_power[b][i]);
  Matrix key(1, h);
  auto cell_order = rates::ascending_order(key).order[0];

  closedform::CellProblem cell;
  for (std::size_t u : cell_order) {
    cell.h_tilde.push_back(h[u]);
    cell.min_rate.push_back(net.min_rate[b][u]);
  }
  const auto powers = closedform::powermin_powers(cell);
  for (std::size_t pos = 0; pos < n; ++pos) p.power[b][cell_order[pos]] = powers[pos];
  order.order[b] = std::move(cell_order);
}

}  // namespace

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Converged: return "Converged";
    case Status::DivergedInfeasible: return "DivergedInfeasible";
    case Status::PowerBudgetExceeded: return "PowerBudgetExceeded";
  }
  return "Unknown";
}

double power_norm(const PowerAllocation& p) {
  double s = 0.0;
  for (const auto& row : p.power)
    for (double v : row) s += v * v;
  return std::sqrt(s);
}

Result run(const NetworkInstance& net, const PowerAllocation& p_init, const Options& options) {
  const std::size_t B = net.num_cells();
  if (p_init.power.size() != B) throw std::invalid_argument("powermin::run: p_init shape mismatch");
  for (std::size_t b = 0; b < B; ++b) {
    if (p_init.power[b].size() != net.num_users(b)) throw std::invalid_argument("powermin::run: p_init shape mismatch");
    for (double v : p_init.power[b])
      if (!std::isfinite(v)) throw std::invalid_argument("powermin::run: p_init must be finite");
  }

  const double limit = options.divergence_factor * std::accumulate(net.max_power.begin(), net.max_power.end(), 0.0);
  Result res;
  res.powers = p_init;
  res.powers.feasible_cell.assign(B, true);
  res.order.order.resize(B);
  double prev_norm = power_norm(res.powers);
  bool converged = false;
  bool diverged = false;

  for (std::size_t it = 0; it < options.max_iter; ++it) {
    for (std::size_t b = 0; b < B; ++b) sweep_cell(net, res.powers, res.order, b);
    res.iterations = it + 1;

    double total = 0.0;
    for (std::size_t b = 0; b < B; ++b) {
      const double cp = cell_power(res.powers, b);
      total += cp;
      if (!(cp <= limit)) diverged = true;
    }
    res.total_power_trace.push_back(total);
    if (diverged) break;

    const double norm = power_norm(res.powers);
    if (std::abs(prev_norm - norm) <= options.eps_tol) {
      converged = true;
      break;
    }
    prev_norm = norm;
  }

  res.alpha_min.resize(B);
  for (std::size_t b = 0; b < B; ++b) res.alpha_min[b] = cell_power(res.powers, b) / net.max_power[b];

  if (!converged) {
    res.status = Status::DivergedInfeasible;
    res.powers.feasible_cell.assign(B, false);
    return res;
  }
  res.status = Status::Converged;
  for (std::size_t b = 0; b < B; ++b) {
    const bool ok = cell_power(res.powers, b) <= net.max_power[b] * (1.0 + kPowerTol);
    res.powers.feasible_cell[b] = ok;
    if (!ok) res.status = Status::PowerBudgetExceeded;
  }
  return res;
}

Result run(const NetworkInstance& net, const PowerAllocation& p_init, double eps_tol, std::size_t max_iter) {
  Options o;
  o.eps_tol = eps_tol;
  o.max_iter = max_iter;
  return run(net, p_init, o);
}

AlphaVector alpha_lower_bounds(const Result& result) {
  if (result.status != Status::Converged)
    throw std::invalid_argument(std::string("alpha_lower_bounds: status is ") + to_string(result.status));
  return AlphaVector(result.alpha_min);
}

}  // namespace noma::powermin
