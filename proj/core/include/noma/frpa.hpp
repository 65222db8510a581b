// SPDX-License-Identifier: Apache-2.0
//
// Fixed-order power allocation that keeps every user at its channel
// capacity: alpha samples are kept only while the fixed order remains a CINR
// order.

#pragma once

#include <optional>

#include "noma/jspa.hpp"
#include "noma/model.hpp"
#include "noma/solvers.hpp"

namespace noma::frpa {

struct FrpaSample {
  AlphaVector alpha;
  bool sic_ok = false;
  std::optional<double> value;  // set only when sic_ok and the powers are feasible
};

/// h~_i(alpha) <= h~_k(alpha) for every cell and every k above i in order.
bool sic_necessary_holds(const NetworkInstance& net, const AlphaVector& alpha, const DecodingOrder& order);

FrpaSample evaluate_sample(const NetworkInstance& net, const DecodingOrder& order, const AlphaVector& alpha);

SolveReport solve_frpa(const NetworkInstance& net, const DecodingOrder& order, const jspa::GridSettings& grid = {});
/// CNR order.
SolveReport solve_frpa(const NetworkInstance& net, const jspa::GridSettings& grid = {});

struct LpVerdict {
  bool feasible = false;
  solvers::LpStatus status = solvers::LpStatus::Infeasible;
  PowerAllocation powers;
  double total_power = 0.0;
};

/// Minimum total power subject to budgets, capacity-rate minimums and the
/// linear form of the SIC necessary condition.
LpVerdict frpa_feasibility_lp(const NetworkInstance& net, const DecodingOrder& order);

/// Cap on cell b's total power from the budget and from the SIC conditions
/// it must not break in other cells, evaluated at the other cells' supplied
/// powers. May be negative when those powers already break a condition.
double combined_power_cap(const NetworkInstance& net, std::size_t b, const DecodingOrder& order,
                          const PowerAllocation& powers);

}  // namespace noma::frpa
