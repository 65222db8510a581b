// SPDX-License-Identifier: Apache-2.0
//
// Grid search over power consumption coefficients with closed-form per-cell
// powers: the globally optimal joint scheme and its two decentralized
// variants. The grid engine is shared with the fixed-order scheme.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "noma/model.hpp"

namespace noma::jspa {

struct GridSettings {
  double eps_alpha = 1e-2;
  bool use_alpha_min = false;
  std::size_t max_samples = 10'000'000;
  std::size_t workers = 1;
};

/// k / S for k = 0..S with S = round(1 / eps); values below lower - 1e-9 are
/// dropped. Throws std::invalid_argument unless 0 < eps <= 1.
std::vector<double> alpha_axis(double eps, double lower = 0.0);

enum class SampleStatus { Feasible, PowerInfeasible, SicRejected };

struct SampleOutcome {
  SampleStatus status = SampleStatus::PowerInfeasible;
  double value = 0.0;
};

using SampleEvaluator = std::function<SampleOutcome(const AlphaVector&)>;

struct GridSearchResult {
  bool found = false;
  AlphaVector best_alpha;
  double best_value = 0.0;
  std::size_t evaluated = 0;
  std::size_t sic_rejected = 0;
  std::size_t power_infeasible = 0;
};

/// Evaluates every point of the Cartesian product of axes (first axis most
/// significant). The maximum value wins; exact ties go to the
/// lexicographically first sample. The result does not depend on workers.
/// Throws std::length_error when the product exceeds max_samples.
GridSearchResult grid_search(const std::vector<std::vector<double>>& axes, const SampleEvaluator& evaluate,
                             std::size_t workers, std::size_t max_samples);

/// Full details of one alpha sample under a given per-cell order.
struct SampleDetail {
  bool feasible = false;
  double value = 0.0;
  DecodingOrder order;
  PowerAllocation powers;
};

/// CINR order at alpha followed by per-cell sum-rate optimal powers.
SampleDetail evaluate_alpha(const NetworkInstance& net, const AlphaVector& alpha);
/// Same with a caller-supplied order (no SIC check).
SampleDetail evaluate_alpha(const NetworkInstance& net, const AlphaVector& alpha, const DecodingOrder& order);

SolveReport solve_jspa(const NetworkInstance& net, const GridSettings& grid = {});
SolveReport solve_fully_distributed(const NetworkInstance& net);
/// Grid over alpha of cell 0 (the macro BS) only; every other BS at alpha 1.
SolveReport solve_semi_centralized(const NetworkInstance& net, const GridSettings& grid = {});

/// Fills a report from a sample (rates re-evaluated from the powers).
SolveReport report_from_sample(const NetworkInstance& net, Scheme scheme, const AlphaVector& alpha,
                               const SampleDetail& sample);

}  // namespace noma::jspa
