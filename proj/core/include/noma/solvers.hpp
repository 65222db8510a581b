// SPDX-License-Identifier: Apache-2.0
//
// Small dense solvers: a two-phase tableau simplex with Bland's rule and a
// log-barrier interior-point method for problems whose constraints are
// linear or log-sum-exp.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace noma::solvers {

// ---------------------------------------------------------------- LP

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct LinearRow {
  std::vector<double> coeffs;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

/// minimize objective . x subject to rows and x >= lower_bounds
/// (lower_bounds empty means all zero).
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearRow> rows;
  std::vector<double> lower_bounds;

  std::size_t num_vars() const noexcept { return objective.size(); }
  void add_row(std::vector<double> coeffs, RowSense sense, double rhs) {
    rows.push_back({std::move(coeffs), sense, rhs});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus s) noexcept;

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double value = 0.0;
  std::size_t pivots = 0;
};

/// Throws std::invalid_argument on dimension mismatch.
LpResult solve_lp(const LinearProgram& lp);

/// Largest violation of any row or bound at x, each row scaled by its largest
/// absolute coefficient.
double max_scaled_residual(const LinearProgram& lp, std::span<const double> x);

// ---------------------------------------------------------- convex

struct AffineTerm {
  std::size_t var = 0;
  double coeff = 0.0;
};

struct ExpTerm {
  std::size_t var = 0;
  double log_weight = 0.0;  // term is exp(x[var] + log_weight)
};

/// sum(terms) <= rhs
struct LinearConstraint {
  std::vector<AffineTerm> terms;
  double rhs = 0.0;
};

/// ln(constant + sum_m exp(x[v_m] + w_m)) + sum(affine) + offset <= 0,
/// constant >= 0. Convex in x.
struct LogSumExpConstraint {
  double constant = 0.0;
  std::vector<ExpTerm> exp_terms;
  std::vector<AffineTerm> affine;
  double offset = 0.0;
};

/// maximize objective . x subject to every constraint.
struct ConvexSubproblem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<LinearConstraint> linear;
  std::vector<LogSumExpConstraint> log_sum_exp;

  std::size_t num_constraints() const noexcept { return linear.size() + log_sum_exp.size(); }
};

struct BarrierSettings {
  double t0 = 1.0;
  double mu = 10.0;
  double newton_tol = 1e-8;   // on half the squared Newton decrement
  double outer_eps = 1e-6;    // stop when m / t <= outer_eps
  std::size_t max_newton = 100;
};

enum class BarrierStatus { Optimal, Infeasible, NewtonFailed };

const char* to_string(BarrierStatus s) noexcept;

struct BarrierResult {
  BarrierStatus status = BarrierStatus::Infeasible;
  std::vector<double> x;
  double value = 0.0;
  std::size_t outer_iterations = 0;
  std::size_t newton_iterations = 0;
  std::string message;
};

/// Finds a strictly feasible point from start (phase I when needed) and then
/// runs the barrier method. Throws std::invalid_argument on malformed input.
BarrierResult solve_subproblem(const ConvexSubproblem& sp, const BarrierSettings& settings,
                               std::span<const double> start);

double constraint_value(const LinearConstraint& c, std::span<const double> x);
double constraint_value(const LogSumExpConstraint& c, std::span<const double> x);
std::vector<double> constraint_gradient(const LinearConstraint& c, std::span<const double> x);
std::vector<double> constraint_gradient(const LogSumExpConstraint& c, std::span<const double> x);

/// Largest constraint value (<= 0 everywhere means feasible).
double max_violation(const ConvexSubproblem& sp, std::span<const double> x);

/// max |analytic - central difference| over every constraint gradient
/// coordinate, step 1e-6.
double check_gradients(const ConvexSubproblem& sp, std::span<const double> point);

/// g(r) = ln(2^r - 1), defined for r > 0.
double log_rate_term(double r);
/// g'(r) = ln2 * 2^r / (2^r - 1).
double log_rate_slope(double r);

}  // namespace noma::solvers
