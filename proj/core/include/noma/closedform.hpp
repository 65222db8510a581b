// SPDX-License-Identifier: Apache-2.0
//
// Closed-form per-cell power allocation. All entry points take users indexed
// by decoding position: index 0 is the lowest decoding order and the last
// index is the cluster head.

#pragma once

#include <cstddef>
#include <vector>

namespace noma::closedform {

struct CellProblem {
  double budget = 0.0;          // Watts
  std::vector<double> h_tilde;  // per Watt, ascending
  std::vector<double> min_rate; // bps/Hz

  std::size_t size() const noexcept { return h_tilde.size(); }
};

struct CellPowers {
  std::vector<double> powers;
  bool feasible = false;
};

/// (2^R - 1) / 2^R.
double sumrate_beta(double min_rate) noexcept;
/// 2^R - 1.
double powermin_beta(double min_rate) noexcept;

/// Sum-rate optimal powers at a fixed budget. Users below the head receive
/// exactly their minimum-rate power; the head takes the remainder. Negative
/// intermediate values mark the budget infeasible; in that case the returned
/// powers are clamped at zero and feasible is false.
CellPowers sumrate_powers(const CellProblem& cell);

/// The same powers from the expanded product form, before any clamping.
std::vector<double> sumrate_powers_expanded(const CellProblem& cell);

/// Channel-independent high-SINR approximation of sumrate_powers.
std::vector<double> approx_sumrate_powers(const CellProblem& cell);

/// Budget fractions under a common minimum rate r for all M users.
std::vector<double> equal_demand_coefficients(std::size_t M, double r_min);

/// Minimum-total-power allocation meeting every min_rate with equality.
/// The budget field is ignored.
std::vector<double> powermin_powers(const CellProblem& cell);

/// Sum of the non-head minimum rates plus the head's rate at power p_head.
double cell_optimal_value(const CellProblem& cell, double p_head);

/// Per-position rates of the cell at the given powers (one-cell rate formula
/// with normalized gains, decoding order = index order).
std::vector<double> cell_rates(const CellProblem& cell, const std::vector<double>& powers);

}  // namespace noma::closedform
