// SPDX-License-Identifier: Apache-2.0

#include "noma/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace noma::scenario {

using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Uniform point in the annulus [r_min, r_max] around (cx, cy).
std::pair<double, double> annulus_point(std::mt19937_64& rng, double cx, double cy, double r_min, double r_max) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  const double r = std::sqrt(u * (r_max * r_max - r_min * r_min) + r_min * r_min);
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  return {cx + r * std::cos(theta), cy + r * std::sin(theta)};
}

double distance(std::pair<double, double> a, std::pair<double, double> b) {
  return std::hypot(a.first - b.first, a.second - b.second);
}

Tier tier_of(std::size_t cell) { return cell == 0 ? Tier::Macro : Tier::Femto; }

Placement draw_placement(const ScenarioConfig& cfg, std::mt19937_64& rng) {
  const std::size_t B = 1 + cfg.num_femto_bs;
  Placement pl;
  pl.bs_xy.emplace_back(0.0, 0.0);
  for (std::size_t f = 0; f < cfg.num_femto_bs; ++f) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(f) / static_cast<double>(cfg.num_femto_bs);
    pl.bs_xy.emplace_back(cfg.bs_distance * std::cos(angle), cfg.bs_distance * std::sin(angle));
  }
  pl.user_xy.resize(B);
  for (std::size_t b = 0; b < B; ++b) {
    const bool macro = b == 0;
    const std::size_t n = macro ? cfg.users_macro : cfg.users_femto;
    const double r_min = macro ? cfg.min_user_dist_macro : cfg.min_user_dist_femto;
    const double r_max = macro ? cfg.macro_radius : cfg.femto_radius;
    for (std::size_t i = 0; i < n; ++i)
      pl.user_xy[b].push_back(annulus_point(rng, pl.bs_xy[b].first, pl.bs_xy[b].second, r_min, r_max));
  }
  return pl;
}

void require_valid(const ScenarioConfig& cfg) {
  const auto v = validate(cfg);
  if (!v.empty()) throw std::invalid_argument("invalid scenario config: " + v.front().field + " " + v.front().message);
}

json config_json(const ScenarioConfig& c) {
  json j{{"macro_radius_m", c.macro_radius},
         {"femto_radius_m", c.femto_radius},
         {"bs_distance_m", c.bs_distance},
         {"num_femto_bs", c.num_femto_bs},
         {"users_macro", c.users_macro},
         {"users_femto", c.users_femto},
         {"min_user_dist_macro_m", c.min_user_dist_macro},
         {"min_user_dist_femto_m", c.min_user_dist_femto},
         {"bandwidth_hz", c.bandwidth},
         {"noise_density_dbm_per_hz", c.noise_density_dbm_per_hz},
         {"noise_power_dbm", c.noise_power_dbm ? json(*c.noise_power_dbm) : json(nullptr)},
         {"p_max_macro_dbm", c.p_max_macro_dbm},
         {"p_max_femto_dbm", c.p_max_femto_dbm},
         {"shadowing_sigma_db", c.shadowing_sigma_db},
         {"shadowing_enabled", c.shadowing_enabled},
         {"min_rate_macro_bps_hz", c.min_rate_macro},
         {"min_rate_femto_bps_hz", c.min_rate_femto},
         {"seed", c.seed}};
  return j;
}

ScenarioConfig config_from(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("scenario config must be a JSON object");
  const json defaults = config_json(ScenarioConfig{});
  for (const auto& [key, _] : j.items())
    if (!defaults.contains(key)) throw std::invalid_argument("unknown scenario key: " + key);
  json merged = defaults;
  merged.update(j);
  try {
    ScenarioConfig c;
    c.macro_radius = merged.at("macro_radius_m").get<double>();
    c.femto_radius = merged.at("femto_radius_m").get<double>();
    c.bs_distance = merged.at("bs_distance_m").get<double>();
    c.num_femto_bs = merged.at("num_femto_bs").get<std::size_t>();
    c.users_macro = merged.at("users_macro").get<std::size_t>();
    c.users_femto = merged.at("users_femto").get<std::size_t>();
    c.min_user_dist_macro = merged.at("min_user_dist_macro_m").get<double>();
    c.min_user_dist_femto = merged.at("min_user_dist_femto_m").get<double>();
    c.bandwidth = merged.at("bandwidth_hz").get<double>();
    c.noise_density_dbm_per_hz = merged.at("noise_density_dbm_per_hz").get<double>();
    if (!merged.at("noise_power_dbm").is_null()) c.noise_power_dbm = merged.at("noise_power_dbm").get<double>();
    c.p_max_macro_dbm = merged.at("p_max_macro_dbm").get<double>();
    c.p_max_femto_dbm = merged.at("p_max_femto_dbm").get<double>();
    c.shadowing_sigma_db = merged.at("shadowing_sigma_db").get<double>();
    c.shadowing_enabled = merged.at("shadowing_enabled").get<bool>();
    c.min_rate_macro = merged.at("min_rate_macro_bps_hz").get<double>();
    c.min_rate_femto = merged.at("min_rate_femto_bps_hz").get<double>();
    c.seed = merged.at("seed").get<std::uint64_t>();
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario config type error: ") + e.what());
  }
}

}  // namespace

std::vector<Violation> validate(const ScenarioConfig& c) {
  std::vector<Violation> out;
  auto need = [&out](bool ok, const char* field, const char* msg) {
    if (!ok) out.push_back({field, msg});
  };
  need(c.macro_radius > 0, "macro_radius_m", "must be > 0");
  need(c.femto_radius > 0, "femto_radius_m", "must be > 0");
  need(c.bs_distance >= 0, "bs_distance_m", "must be >= 0");
  need(c.users_macro >= 1, "users_macro", "must be >= 1");
  need(c.users_femto >= 1 || c.num_femto_bs == 0, "users_femto", "must be >= 1");
  need(c.min_user_dist_macro > 0 && c.min_user_dist_macro < c.macro_radius, "min_user_dist_macro_m",
       "must lie in (0, macro_radius_m)");
  need(c.min_user_dist_femto > 0 && c.min_user_dist_femto < c.femto_radius, "min_user_dist_femto_m",
       "must lie in (0, femto_radius_m)");
  need(c.bandwidth > 0, "bandwidth_hz", "must be > 0");
  need(c.shadowing_sigma_db >= 0, "shadowing_sigma_db", "must be >= 0");
  need(c.min_rate_macro >= 0, "min_rate_macro_bps_hz", "must be >= 0");
  need(c.min_rate_femto >= 0, "min_rate_femto_bps_hz", "must be >= 0");
  return out;
}

double path_loss_db(double distance_m, Tier tier) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("path loss distance must be > 0");
  const double lg = std::log10(distance_m / 1000.0);
  return tier == Tier::Macro ? 128.1 + 37.6 * lg : 140.7 + 36.7 * lg;
}

double dbm_to_watt(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) noexcept { return 10.0 * std::log10(watt) + 30.0; }

double noise_power_w(const ScenarioConfig& cfg) noexcept {
  if (cfg.noise_power_dbm) return dbm_to_watt(*cfg.noise_power_dbm);
  return dbm_to_watt(cfg.noise_density_dbm_per_hz) * cfg.bandwidth;
}

std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t realization_index) noexcept {
  return splitmix64(splitmix64(base_seed) ^ (realization_index * 0xD1B54A32D192ED03ull + 1));
}

Placement place(const ScenarioConfig& cfg, std::uint64_t realization_index) {
  require_valid(cfg);
  std::mt19937_64 rng(stream_seed(cfg.seed, realization_index));
  return draw_placement(cfg, rng);
}

NetworkInstance generate(const ScenarioConfig& cfg, std::uint64_t realization_index) {
  require_valid(cfg);
  std::mt19937_64 rng(stream_seed(cfg.seed, realization_index));
  const Placement pl = draw_placement(cfg, rng);

  const std::size_t B = pl.bs_xy.size();
  std::normal_distribution<double> shadow(0.0, cfg.shadowing_sigma_db);
  std::exponential_distribution<double> fading(1.0);
  auto link_gain = [&](std::size_t tx, std::pair<double, double> rx) {
    const Tier tier = tier_of(tx);
    const double d_min = tier == Tier::Macro ? cfg.min_user_dist_macro : cfg.min_user_dist_femto;
    const double d = std::max(distance(pl.bs_xy[tx], rx), d_min);
    const double x = cfg.shadowing_enabled ? shadow(rng) : 0.0;
    return std::pow(10.0, -(path_loss_db(d, tier) + x) / 10.0) * fading(rng);
  };

  NetworkInstance net;
  net.users_per_cell.resize(B);
  net.direct_gain.resize(B);
  net.noise_power.resize(B);
  net.min_rate.resize(B);
  net.max_power.resize(B);
  net.cross_gain.assign(B, Matrix(B));
  const double sigma2 = noise_power_w(cfg);
  for (std::size_t b = 0; b < B; ++b) {
    const std::size_t n = pl.user_xy[b].size();
    net.users_per_cell[b] = n;
    net.max_power[b] = dbm_to_watt(b == 0 ? cfg.p_max_macro_dbm : cfg.p_max_femto_dbm);
    net.noise_power[b].assign(n, sigma2);
    net.min_rate[b].assign(n, b == 0 ? cfg.min_rate_macro : cfg.min_rate_femto);
  }
  // Draw order: receiving cell, user, then transmitting BS (serving first).
  for (std::size_t b = 0; b < B; ++b) {
    for (std::size_t j = 0; j < B; ++j)
      if (j != b) net.cross_gain[j][b].resize(pl.user_xy[b].size());
    for (std::size_t i = 0; i < pl.user_xy[b].size(); ++i) {
      net.direct_gain[b].push_back(link_gain(b, pl.user_xy[b][i]));
      for (std::size_t j = 0; j < B; ++j)
        if (j != b) net.cross_gain[j][b][i] = link_gain(j, pl.user_xy[b][i]);
    }
  }
  return net;
}

ScenarioConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed scenario JSON: ") + e.what());
  }
  return config_from(j);
}

std::string to_json(const ScenarioConfig& cfg, int indent) { return config_json(cfg).dump(indent); }

void apply_override(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  json v;
  try {
    v = json::parse(value);
  } catch (const json::parse_error&) {
    v = std::string(value);
  }
  json j = config_json(cfg);
  const std::string k(key);
  if (k == "users_per_cell") {
    j["users_macro"] = v;
    j["users_femto"] = v;
  } else if (k == "min_rate" || k == "min_rate_bps_hz") {
    j["min_rate_macro_bps_hz"] = v;
    j["min_rate_femto_bps_hz"] = v;
  } else {
    if (!j.contains(k)) throw std::invalid_argument("unknown scenario key: " + k);
    j[k] = v;
  }
  cfg = config_from(j);
}

}  // namespace noma::scenario
