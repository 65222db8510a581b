// SPDX-License-Identifier: Apache-2.0
//
// Random two-tier HetNet generator: one macro BS at the origin (cell 0) and
// num_femto_bs femto BSs on a ring of radius bs_distance (cells 1..F).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "noma/model.hpp"

namespace noma::scenario {

enum class Tier { Macro, Femto };

struct ScenarioConfig {
  double macro_radius = 500.0;              // m
  double femto_radius = 40.0;               // m
  double bs_distance = 200.0;               // m, MBS to each FBS
  std::size_t num_femto_bs = 1;
  std::size_t users_macro = 3;
  std::size_t users_femto = 2;
  double min_user_dist_macro = 20.0;        // m
  double min_user_dist_femto = 2.0;         // m
  double bandwidth = 5e6;                   // Hz
  double noise_density_dbm_per_hz = -174.0; // dBm/Hz
  // When set, replaces the N0*W noise power with this total power (dBm).
  std::optional<double> noise_power_dbm;
  double p_max_macro_dbm = 46.0;
  double p_max_femto_dbm = 30.0;
  double shadowing_sigma_db = 8.0;
  bool shadowing_enabled = true;
  double min_rate_macro = 1.0;              // bps/Hz
  double min_rate_femto = 1.0;              // bps/Hz
  std::uint64_t seed = 1;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Problems with the config; empty when valid.
std::vector<Violation> validate(const ScenarioConfig& cfg);

/// Throws std::invalid_argument for distance <= 0.
double path_loss_db(double distance_m, Tier tier);

double dbm_to_watt(double dbm) noexcept;
double watt_to_dbm(double watt) noexcept;

/// Receiver noise power in Watts implied by the config.
double noise_power_w(const ScenarioConfig& cfg) noexcept;

/// Deterministic in (cfg, realization_index). Throws std::invalid_argument for
/// an invalid config.
NetworkInstance generate(const ScenarioConfig& cfg, std::uint64_t realization_index);

/// Stream seed used for a realization; exposed for tests.
std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t realization_index) noexcept;

/// Geometry of one realization, returned alongside the instance for tests.
struct Placement {
  std::vector<std::pair<double, double>> bs_xy;
  std::vector<std::vector<std::pair<double, double>>> user_xy;  // [b][i]
};
Placement place(const ScenarioConfig& cfg, std::uint64_t realization_index);

/// JSON config I/O. Unknown keys are rejected.
ScenarioConfig config_from_json(std::string_view text);
std::string to_json(const ScenarioConfig& cfg, int indent = 2);

/// Applies one key=value override using the JSON field names; the value is
/// parsed as JSON when possible, otherwise as a bare string. Accepts
/// "users_per_cell" and "min_rate" as shorthands that set both tiers.
/// Throws std::invalid_argument for unknown keys or ill-typed values.
void apply_override(ScenarioConfig& cfg, std::string_view key, std::string_view value);

}  // namespace noma::scenario
