// SPDX-License-Identifier: Apache-2.0
//
// Distributed joint SIC ordering and total power minimization. Each sweep
// visits the cells in ascending index, recomputes ICI from the current powers,
// reorders by CINR and assigns the per-cell minimum-power solution.

#pragma once

#include <cstddef>
#include <vector>

#include "noma/model.hpp"

namespace noma::powermin {

enum class Status { Converged, DivergedInfeasible, PowerBudgetExceeded };

const char* to_string(Status s) noexcept;

struct Options {
  double eps_tol = 1e-6;             // Watts, on the change of the power norm
  std::size_t max_iter = 500;
  double divergence_factor = 1e6;    // times the sum of all P^max
};

struct Result {
  PowerAllocation powers;
  DecodingOrder order;
  std::vector<double> alpha_min;
  Status status = Status::DivergedInfeasible;
  std::size_t iterations = 0;
  std::vector<double> total_power_trace;  // sum of all powers after each sweep
};

Result run(const NetworkInstance& net, const PowerAllocation& p_init, const Options& options = {});

/// Convenience overload matching the (eps_tol, max_iter) call shape.
Result run(const NetworkInstance& net, const PowerAllocation& p_init, double eps_tol, std::size_t max_iter);

/// Per-cell alpha_min. Throws std::invalid_argument unless status is Converged.
AlphaVector alpha_lower_bounds(const Result& result);

/// Euclidean norm over every per-user power.
double power_norm(const PowerAllocation& p);

}  // namespace noma::powermin
