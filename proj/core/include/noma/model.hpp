// SPDX-License-Identifier: Apache-2.0
//
// Shared domain types for downlink multi-cell NOMA resource allocation.
//
// Units: powers, gains and noise are linear (Watts, dimensionless power gain);
// rates are spectral efficiencies in bps/Hz. dBm only appears at the scenario
// and I/O boundary.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace noma {

/// Absolute tolerance for power comparisons (Watts).
inline constexpr double kPowerTol = 1e-9;
/// Absolute tolerance for rate comparisons (bps/Hz).
inline constexpr double kRateTol = 1e-9;

using Matrix = std::vector<std::vector<double>>;

/// Topology and channel state of one network realization.
///
/// Cell b serves users 0..users_per_cell[b]-1. cross_gain[j][b][i] is the
/// power gain from BS j to user i of cell b and is only populated for j != b;
/// cross_gain[b][b] stays empty.
struct NetworkInstance {
  std::vector<std::size_t> users_per_cell;
  Matrix direct_gain;                       // h_{b,i}
  std::vector<Matrix> cross_gain;           // h_{j,b,i}, j != b
  Matrix noise_power;                       // sigma^2_{b,i}, Watts
  std::vector<double> max_power;            // P^max_b, Watts
  Matrix min_rate;                          // R^min_{b,i}, bps/Hz

  std::size_t num_cells() const noexcept { return users_per_cell.size(); }
  std::size_t num_users(std::size_t b) const { return users_per_cell.at(b); }
  std::size_t total_users() const noexcept;

  /// h_{j,b,i}; zero when j == b.
  double cross(std::size_t j, std::size_t b, std::size_t i) const;

  bool operator==(const NetworkInstance&) const = default;
};

/// Per-BS power consumption coefficients alpha_b in [0, 1].
struct AlphaVector {
  std::vector<double> values;

  AlphaVector() = default;
  explicit AlphaVector(std::vector<double> v) : values(std::move(v)) {}
  static AlphaVector ones(std::size_t num_cells) { return AlphaVector(std::vector<double>(num_cells, 1.0)); }

  double operator[](std::size_t b) const { return values[b]; }
  double& operator[](std::size_t b) { return values[b]; }
  std::size_t size() const noexcept { return values.size(); }

  bool operator==(const AlphaVector&) const = default;
};

/// Binary decoding indicator matrix of one cell: lambda[i][k] == 1 iff user k
/// decodes the signal of user i (k == i or k has a higher decoding order).
using LambdaMatrix = std::vector<std::vector<std::uint8_t>>;

/// Per-cell SIC decoding order stored as a permutation.
///
/// order[b][0] is the user with the lowest decoding order (decoded by
/// everyone); order[b].back() is the cluster head. A permutation satisfies the
/// uniqueness, transitivity and self-decoding constraints on lambda by
/// construction.
struct DecodingOrder {
  std::vector<std::vector<std::size_t>> order;

  std::size_t num_cells() const noexcept { return order.size(); }

  /// Position of user i within cell b's order.
  std::size_t position(std::size_t b, std::size_t i) const;

  /// Phi_{b,i}: users with a higher decoding order than user i.
  std::vector<std::size_t> successors(std::size_t b, std::size_t i) const;

  /// True when every order[b] is a bijection on {0..n_b-1}.
  bool is_valid(const std::vector<std::size_t>& users_per_cell) const;

  LambdaMatrix to_lambda(std::size_t b) const;

  /// Inverse of to_lambda for a single cell. Throws std::invalid_argument when
  /// lambda is not a total order.
  static std::vector<std::size_t> cell_order_from_lambda(const LambdaMatrix& lambda);

  bool operator==(const DecodingOrder&) const = default;
};

/// Per-user transmit powers (Watts) and per-cell feasibility flags.
struct PowerAllocation {
  Matrix power;
  std::vector<bool> feasible_cell;

  /// All-zero allocation shaped like the network.
  static PowerAllocation zeros(const NetworkInstance& net);
  /// Each BS spreads P^max_b equally across its users.
  static PowerAllocation equal_split(const NetworkInstance& net);

  bool operator==(const PowerAllocation&) const = default;
};

enum class Scheme { JSPA, JRPA, FRPA, PowerMin, FullyDistributed, SemiCentralized };

std::string_view to_string(Scheme s) noexcept;
/// Accepts the canonical names plus lowercase/kebab aliases ("jspa",
/// "semi-centralized", ...). Throws std::invalid_argument otherwise.
Scheme parse_scheme(std::string_view name);

struct SolveReport {
  Scheme scheme = Scheme::JSPA;
  Matrix rates;
  double sum_rate = 0.0;
  AlphaVector alpha;
  DecodingOrder order;
  PowerAllocation powers;
  bool feasible = false;
  std::vector<double> trace;

  // Verdict of the scheme's low-complexity feasibility oracle (power
  // minimization for JSPA, LP for JRPA/FRPA). Absent when not evaluated.
  bool oracle_evaluated = false;
  bool oracle_feasible = false;

  // Grid diagnostics (grid-based schemes only).
  std::size_t samples_evaluated = 0;
  std::size_t samples_sic_rejected = 0;
  std::size_t samples_power_infeasible = 0;

  std::string note;

  bool operator==(const SolveReport&) const = default;
};

struct Violation {
  std::string field;
  std::string message;

  bool operator==(const Violation&) const = default;
};

/// Structural check of every NetworkInstance invariant. Empty result iff the
/// instance is well formed.
std::vector<Violation> validate(const NetworkInstance& net);

/// Sum of transmit powers in cell b. Throws std::out_of_range for a bad index.
double cell_power(const PowerAllocation& powers, std::size_t b);

}  // namespace noma
