// SPDX-License-Identifier: Apache-2.0

#include "noma/jrpa.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "noma/closedform.hpp"
#include "noma/rates.hpp"

namespace noma::jrpa {

namespace {

constexpr double kRateCeiling = 100.0;  // bps/Hz
constexpr double kLogPowerRange = 50.0;  // ptilde >= ln P^max - this

double hat(const NetworkInstance& net, std::size_t b, std::size_t k) { return net.direct_gain[b][k] / net.noise_power[b][k]; }

std::vector<std::vector<RateLinearization>> tangents(const Matrix& r) {
  std::vector<std::vector<RateLinearization>> lin(r.size());
  for (std::size_t b = 0; b < r.size(); ++b)
    for (double v : r[b]) lin[b].push_back(tangent_at(std::max(v, 1e-6)));
  return lin;
}

/// Moves a point into the box constraints; phase I handles the rest.
std::vector<double> start_point(const NetworkInstance& net, const VariableMap& map, const JrpaState& s) {
  std::vector<double> x = pack(map, s);
  for (std::size_t b = 0; b < net.num_cells(); ++b) {
    const double lp = std::log(net.max_power[b]);
    for (std::size_t i = 0; i < net.num_users(b); ++i) {
      double& r = x[map.r(b, i)];
      r = std::clamp(r, rate_floor(net.min_rate[b][i]), kRateCeiling);
      double& p = x[map.ptilde(b, i)];
      p = std::clamp(p, lp - kLogPowerRange + 1.0, lp - 1e-9);
    }
  }
  return x;
}

SolveReport outage_report(const NetworkInstance& net, const DecodingOrder& order, std::string note) {
  SolveReport r;
  r.scheme = Scheme::JRPA;
  r.alpha = AlphaVector(std::vector<double>(net.num_cells(), 0.0));
  r.order = order;
  r.powers = PowerAllocation::zeros(net);
  r.powers.feasible_cell.assign(net.num_cells(), false);
  r.rates = rates::achievable_rates(net, r.powers, order);
  r.feasible = false;
  r.note = std::move(note);
  return r;
}

}  // namespace

const char* to_string(InitMethod m) noexcept {
  switch (m) {
    case InitMethod::MRE: return "MRE";
    case InitMethod::ARF: return "ARF";
    case InitMethod::EPA: return "EPA";
  }
  return "Unknown";
}

InitMethod parse_init(std::string_view name) {
  std::string k;
  for (char c : name) k.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (k == "mre") return InitMethod::MRE;
  if (k == "arf") return InitMethod::ARF;
  if (k == "epa") return InitMethod::EPA;
  throw std::invalid_argument("unknown JRPA init method: " + std::string(name));
}

double rate_floor(double min_rate) noexcept { return std::max(min_rate, 1e-6); }

RateLinearization tangent_at(double r0) {
  const double slope = solvers::log_rate_slope(r0);
  return {slope, solvers::log_rate_term(r0) - slope * r0};
}

VariableMap::VariableMap(const NetworkInstance& net) {
  for (std::size_t b = 0; b < net.num_cells(); ++b) {
    offset.push_back(users);
    users += net.num_users(b);
  }
}

std::vector<double> pack(const VariableMap& map, const JrpaState& s) {
  std::vector<double> x(map.size(), 0.0);
  for (std::size_t b = 0; b < s.r.size(); ++b)
    for (std::size_t i = 0; i < s.r[b].size(); ++i) {
      x[map.r(b, i)] = s.r[b][i];
      x[map.ptilde(b, i)] = s.ptilde[b][i];
    }
  return x;
}

JrpaState unpack(const VariableMap& map, const NetworkInstance& net, const std::vector<double>& x) {
  JrpaState s;
  s.r.resize(net.num_cells());
  s.ptilde.resize(net.num_cells());
  for (std::size_t b = 0; b < net.num_cells(); ++b)
    for (std::size_t i = 0; i < net.num_users(b); ++i) {
      s.r[b].push_back(x[map.r(b, i)]);
      s.ptilde[b].push_back(x[map.ptilde(b, i)]);
    }
  return s;
}

solvers::ConvexSubproblem build_subproblem(const NetworkInstance& net, const DecodingOrder& order,
                                           const std::vector<std::vector<RateLinearization>>& lin,
                                           bool prune_sufficient_pairs) {
  const VariableMap map(net);
  const std::size_t B = net.num_cells();
  solvers::ConvexSubproblem sp;
  sp.num_vars = map.size();
  sp.objective.assign(sp.num_vars, 0.0);

  for (std::size_t b = 0; b < B; ++b) {
    const double lp = std::log(net.max_power[b]);
    solvers::LogSumExpConstraint budget;
    budget.offset = -lp;
    for (std::size_t i = 0; i < net.num_users(b); ++i) {
      const std::size_t r = map.r(b, i), p = map.ptilde(b, i);
      sp.objective[r] = 1.0;
      sp.linear.push_back({{{r, -1.0}}, -rate_floor(net.min_rate[b][i])});
      sp.linear.push_back({{{r, 1.0}}, kRateCeiling});
      sp.linear.push_back({{{p, 1.0}}, lp});
      sp.linear.push_back({{{p, -1.0}}, -(lp - kLogPowerRange)});
      budget.exp_terms.push_back({p, 0.0});
    }
    sp.log_sum_exp.push_back(std::move(budget));
  }

  // Decoding of user i's signal at user k (k == i or above i), with gains
  // normalized by user k's noise power:
  //   a*r_i + c + ln(1 + sum_above h_k e^{pt_j} + sum_{j != b} h_{j,k} e^{pt_{j,l}}) - pt_i - ln h_k <= 0
  for (std::size_t b = 0; b < B; ++b) {
    const auto& cell = order.order[b];
    for (std::size_t pos = 0; pos < cell.size(); ++pos) {
      const std::size_t i = cell[pos];
      for (std::size_t kpos = pos; kpos < cell.size(); ++kpos) {
        const std::size_t k = cell[kpos];
        if (k != i && prune_sufficient_pairs && rates::sic_sufficient(net, b, i, k)) continue;
        const double lhk = std::log(hat(net, b, k));
        solvers::LogSumExpConstraint row;
        row.constant = 1.0;
        for (std::size_t q = pos + 1; q < cell.size(); ++q) row.exp_terms.push_back({map.ptilde(b, cell[q]), lhk});
        for (std::size_t j = 0; j < B; ++j) {
          if (j == b) continue;
          const double g = net.cross_gain[j][b][k] / net.noise_power[b][k];
          if (!(g > 0.0)) continue;
          for (std::size_t l = 0; l < net.num_users(j); ++l) row.exp_terms.push_back({map.ptilde(j, l), std::log(g)});
        }
        row.affine = {{map.r(b, i), lin[b][i].slope}, {map.ptilde(b, i), -1.0}};
        row.offset = lin[b][i].intercept - lhk;
        sp.log_sum_exp.push_back(std::move(row));
      }
    }
  }
  return sp;
}

InitResult initialize(const NetworkInstance& net, const DecodingOrder& order, const JrpaSettings& settings) {
  const std::size_t B = net.num_cells();
  InitResult out;
  out.state.r.resize(B);
  out.state.ptilde.resize(B);
  for (std::size_t b = 0; b < B; ++b)
    for (std::size_t i = 0; i < net.num_users(b); ++i) {
      out.state.r[b].push_back(rate_floor(net.min_rate[b][i]));
      out.state.ptilde[b].push_back(std::log(net.max_power[b] / static_cast<double>(net.num_users(b))));
    }

  switch (settings.init) {
    case InitMethod::MRE: {
      const auto lp = jrpa_feasibility_lp(net, order);
      out.feasible = lp.feasible;
      if (!lp.feasible) break;
      for (std::size_t b = 0; b < B; ++b) {
        const double floor_p = net.max_power[b] * std::exp(-kLogPowerRange + 1.0);
        for (std::size_t i = 0; i < net.num_users(b); ++i)
          out.state.ptilde[b][i] = std::log(std::max(lp.powers.power[b][i], floor_p));
      }
      break;
    }
    case InitMethod::ARF: {
      const double m = solvers::log_rate_slope(settings.arf_linearization_point);
      std::vector<std::vector<RateLinearization>> lin(B);
      for (std::size_t b = 0; b < B; ++b) lin[b].assign(net.num_users(b), RateLinearization{m, 0.0});
      const auto sp = build_subproblem(net, order, lin, settings.prune_sufficient_pairs);
      const VariableMap map(net);
      const auto res = solvers::solve_subproblem(sp, settings.barrier, start_point(net, map, out.state));
      out.feasible = res.status != solvers::BarrierStatus::Infeasible && solvers::max_violation(sp, res.x) < 0.0;
      if (out.feasible) out.state = unpack(map, net, res.x);
      break;
    }
    case InitMethod::EPA: {
      const PowerAllocation p = PowerAllocation::equal_split(net);
      const Matrix r0 = rates::achievable_rates(net, p, order);
      out.feasible = true;
      for (std::size_t b = 0; b < B; ++b)
        for (std::size_t i = 0; i < net.num_users(b); ++i) {
          out.state.r[b][i] = r0[b][i];
          if (r0[b][i] < net.min_rate[b][i] - kRateTol) out.feasible = false;
        }
      break;
    }
  }
  return out;
}

JrpaResult run_jrpa(const NetworkInstance& net, const DecodingOrder& order, const JrpaSettings& settings) {
  if (!order.is_valid(net.users_per_cell)) throw std::invalid_argument("run_jrpa: invalid decoding order");
  if (!(settings.eps_s > 0.0)) throw std::invalid_argument("JrpaSettings: eps_s must be > 0");
  if (!(settings.arf_linearization_point > 0.0)) throw std::invalid_argument("JrpaSettings: ARF point must be > 0");

  JrpaResult out;
  const InitResult init = initialize(net, order, settings);
  out.iterates.push_back(init.state);
  if (!init.feasible && settings.init != InitMethod::EPA) {
    out.report = outage_report(net, order, std::string("initialization ") + to_string(settings.init) + " infeasible");
    return out;
  }

  const VariableMap map(net);
  JrpaState current = init.state;
  bool have_iterate = false;
  std::vector<double> trace;
  for (std::size_t t = 0; t < settings.max_outer; ++t) {
    const auto sp = build_subproblem(net, order, tangents(current.r), settings.prune_sufficient_pairs);
    const auto res = solvers::solve_subproblem(sp, settings.barrier, start_point(net, map, current));
    const bool usable = res.status != solvers::BarrierStatus::Infeasible && solvers::max_violation(sp, res.x) < 0.0;
    if (!usable) {
      if (!have_iterate) {
        out.report = outage_report(net, order, "first convex subproblem infeasible");
        return out;
      }
      out.warning = true;
      break;
    }
    JrpaState next = unpack(map, net, res.x);
    double diff2 = 0.0, total = 0.0;
    for (std::size_t b = 0; b < net.num_cells(); ++b)
      for (std::size_t i = 0; i < net.num_users(b); ++i) {
        const double d = next.r[b][i] - current.r[b][i];
        diff2 += d * d;
        total += next.r[b][i];
      }
    trace.push_back(total);
    out.iterates.push_back(next);
    current = std::move(next);
    have_iterate = true;
    if (std::sqrt(diff2) <= settings.eps_s) break;
  }

  SolveReport& r = out.report;
  r.scheme = Scheme::JRPA;
  r.order = order;
  r.trace = std::move(trace);
  r.rates = current.r;
  r.powers = PowerAllocation::zeros(net);
  r.alpha = AlphaVector(std::vector<double>(net.num_cells(), 0.0));
  for (std::size_t b = 0; b < net.num_cells(); ++b) {
    for (std::size_t i = 0; i < net.num_users(b); ++i) r.powers.power[b][i] = std::exp(current.ptilde[b][i]);
    r.alpha[b] = cell_power(r.powers, b) / net.max_power[b];
  }
  r.sum_rate = 0.0;
  for (const auto& row : r.rates)
    for (double v : row) r.sum_rate += v;

  // The adopted rates must be decodable at the final powers.
  const Matrix actual = rates::achievable_rates(net, r.powers, order);
  bool ok = true;
  for (std::size_t b = 0; b < net.num_cells(); ++b) {
    const bool cell_ok = cell_power(r.powers, b) <= net.max_power[b] * (1.0 + kPowerTol);
    bool rates_ok = true;
    for (std::size_t i = 0; i < net.num_users(b); ++i)
      if (r.rates[b][i] > actual[b][i] + 1e-6 || r.rates[b][i] < net.min_rate[b][i] - kRateTol) rates_ok = false;
    r.powers.feasible_cell[b] = cell_ok && rates_ok;
    ok = ok && cell_ok && rates_ok;
  }
  r.feasible = ok;
  if (!ok) {
    r.note = "exit verification failed";
    r.sum_rate = 0.0;
  } else if (out.warning) {
    r.note = "subproblem became infeasible; returned the last feasible iterate";
  }
  return out;
}

SolveReport solve_jrpa(const NetworkInstance& net, const DecodingOrder& order, const JrpaSettings& settings) {
  return run_jrpa(net, order, settings).report;
}

SolveReport solve_jrpa(const NetworkInstance& net, const JrpaSettings& settings) {
  return solve_jrpa(net, rates::cnr_order(net), settings);
}

frpa::LpVerdict jrpa_feasibility_lp(const NetworkInstance& net, const DecodingOrder& order) {
  if (!order.is_valid(net.users_per_cell)) throw std::invalid_argument("jrpa_feasibility_lp: invalid decoding order");
  const VariableMap map(net);
  const std::size_t B = net.num_cells();
  const std::size_t n = map.users;
  solvers::LinearProgram lp;
  lp.objective.assign(n, 0.0);
  for (std::size_t b = 0; b < B; ++b)
    for (std::size_t i = 0; i < net.num_users(b); ++i) lp.objective[map.r(b, i)] = net.max_power[b];

  for (std::size_t b = 0; b < B; ++b) {
    std::vector<double> row(n, 0.0);
    for (std::size_t i = 0; i < net.num_users(b); ++i) row[map.r(b, i)] = 1.0;
    lp.add_row(std::move(row), solvers::RowSense::LessEqual, 1.0);
  }
  for (std::size_t b = 0; b < B; ++b) {
    const auto& cell = order.order[b];
    for (std::size_t pos = 0; pos < cell.size(); ++pos) {
      const std::size_t i = cell[pos];
      const double beta = closedform::powermin_beta(net.min_rate[b][i]);
      if (beta == 0.0) continue;
      for (std::size_t kpos = pos; kpos < cell.size(); ++kpos) {
        const std::size_t k = cell[kpos];
        // p_i - beta*(sum_above p_j + sum_{j != b} (h_{j,k}/h_k) P_j) >= beta / h_k
        const double hk = hat(net, b, k);
        std::vector<double> row(n, 0.0);
        row[map.r(b, i)] = net.max_power[b];
        for (std::size_t q = pos + 1; q < cell.size(); ++q) row[map.r(b, cell[q])] = -beta * net.max_power[b];
        for (std::size_t j = 0; j < B; ++j) {
          if (j == b) continue;
          const double c = -beta * (net.cross_gain[j][b][k] / net.noise_power[b][k]) / hk * net.max_power[j];
          for (std::size_t l = 0; l < net.num_users(j); ++l) row[map.r(j, l)] = c;
        }
        lp.add_row(std::move(row), solvers::RowSense::GreaterEqual, beta / hk);
      }
    }
  }
  const auto res = solvers::solve_lp(lp);
  frpa::LpVerdict v;
  v.status = res.status;
  v.feasible = res.status == solvers::LpStatus::Optimal;
  v.powers = PowerAllocation::zeros(net);
  v.powers.feasible_cell.assign(B, v.feasible);
  if (v.feasible)
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t i = 0; i < net.num_users(b); ++i) {
        v.powers.power[b][i] = res.x[map.r(b, i)] * net.max_power[b];
        v.total_power += v.powers.power[b][i];
      }
  return v;
}

}  // namespace noma::jrpa
