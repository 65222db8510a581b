// SPDX-License-Identifier: Apache-2.0
//
// Joint rate and power allocation for a fixed decoding order by sequential
// convex programming. Variables are adopted rates r and log-powers
// ptilde = ln p; the concave rate term ln(2^r - 1) is replaced by its tangent
// at the previous iterate, which keeps every iterate feasible.

#pragma once

#include <string_view>
#include <vector>

#include "noma/frpa.hpp"
#include "noma/model.hpp"
#include "noma/solvers.hpp"

namespace noma::jrpa {

enum class InitMethod { MRE, ARF, EPA };

const char* to_string(InitMethod m) noexcept;
/// "mre", "arf", "epa" (case-insensitive). Throws std::invalid_argument.
InitMethod parse_init(std::string_view name);

struct JrpaSettings {
  double eps_s = 0.1;                    // bps/Hz
  std::size_t max_outer = 50;
  InitMethod init = InitMethod::MRE;
  double arf_linearization_point = 15.0; // bps/Hz
  bool prune_sufficient_pairs = false;
  solvers::BarrierSettings barrier{1.0, 10.0, 1e-8, 1e-8, 100};
};

struct JrpaState {
  Matrix r;       // bps/Hz
  Matrix ptilde;  // ln Watts
};

struct InitResult {
  JrpaState state;
  bool feasible = false;
};

/// Lower bound used for adopted rates: max(R^min, 1e-6).
double rate_floor(double min_rate) noexcept;

InitResult initialize(const NetworkInstance& net, const DecodingOrder& order, const JrpaSettings& settings);

/// Affine upper bound a*r + c of ln(2^r - 1) used for one user.
struct RateLinearization {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Tangent of ln(2^r - 1) at r0.
RateLinearization tangent_at(double r0);

/// Variable layout: r of user (b, i) at flat index k, ptilde at N + k.
struct VariableMap {
  std::vector<std::size_t> offset;
  std::size_t users = 0;
  explicit VariableMap(const NetworkInstance& net);
  std::size_t r(std::size_t b, std::size_t i) const { return offset[b] + i; }
  std::size_t ptilde(std::size_t b, std::size_t i) const { return users + offset[b] + i; }
  std::size_t size() const { return 2 * users; }
};

/// Convex subproblem for the given per-user linearizations lin[b][i].
solvers::ConvexSubproblem build_subproblem(const NetworkInstance& net, const DecodingOrder& order,
                                           const std::vector<std::vector<RateLinearization>>& lin,
                                           bool prune_sufficient_pairs);

std::vector<double> pack(const VariableMap& map, const JrpaState& s);
JrpaState unpack(const VariableMap& map, const NetworkInstance& net, const std::vector<double>& x);

struct JrpaResult {
  SolveReport report;
  std::vector<JrpaState> iterates;  // index 0 is the initial point
  bool warning = false;
};

JrpaResult run_jrpa(const NetworkInstance& net, const DecodingOrder& order, const JrpaSettings& settings = {});
SolveReport solve_jrpa(const NetworkInstance& net, const DecodingOrder& order, const JrpaSettings& settings = {});
/// CNR order.
SolveReport solve_jrpa(const NetworkInstance& net, const JrpaSettings& settings = {});

/// Minimum total power such that every user's signal is decodable at its
/// minimum rate by itself and by every user above it.
frpa::LpVerdict jrpa_feasibility_lp(const NetworkInstance& net, const DecodingOrder& order);

}  // namespace noma::jrpa
