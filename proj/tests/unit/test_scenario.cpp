// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "noma/scenario.hpp"

namespace noma::scenario {
namespace {

TEST(PathLoss, TableValues) {
  EXPECT_NEAR(path_loss_db(1000.0, Tier::Macro), 128.1, 1e-12);
  EXPECT_NEAR(path_loss_db(1000.0, Tier::Femto), 140.7, 1e-12);
  // 128.1 + 37.6 * log10(0.1)
  EXPECT_NEAR(path_loss_db(100.0, Tier::Macro), 90.5, 1e-12);
  EXPECT_NEAR(path_loss_db(1000.0, Tier::Macro) - path_loss_db(100.0, Tier::Macro), 37.6, 1e-12);
  EXPECT_NEAR(path_loss_db(400.0, Tier::Femto) - path_loss_db(40.0, Tier::Femto), 36.7, 1e-12);
  EXPECT_THROW(path_loss_db(0.0, Tier::Macro), std::invalid_argument);
  EXPECT_THROW(path_loss_db(-3.0, Tier::Femto), std::invalid_argument);
}

TEST(Units, DbmConversions) {
  EXPECT_NEAR(dbm_to_watt(30.0), 1.0, 1e-15);
  EXPECT_NEAR(dbm_to_watt(46.0), 39.810717055349734, 1e-12);
  EXPECT_NEAR(watt_to_dbm(dbm_to_watt(-94.0)), -94.0, 1e-12);
}

TEST(Units, NoisePowerFromDensity) {
  ScenarioConfig cfg;
  // -174 dBm/Hz = 10^-20.4 W/Hz.
  EXPECT_NEAR(noise_power_w(cfg) / (std::pow(10.0, -20.4) * 5e6), 1.0, 1e-12);
  EXPECT_NEAR(noise_power_w(cfg), 1.99e-14, 0.01e-14);
  EXPECT_NEAR(watt_to_dbm(noise_power_w(cfg)), -174.0 + 10.0 * std::log10(5e6), 1e-9);
  cfg.noise_power_dbm = -94.0;
  EXPECT_NEAR(noise_power_w(cfg), std::pow(10.0, -12.4), 1e-25);
}

TEST(Generate, ShapeMatchesConfig) {
  ScenarioConfig cfg;
  const auto net = generate(cfg, 0);
  ASSERT_EQ(net.num_cells(), 2u);
  EXPECT_EQ(net.num_users(0), 3u);
  EXPECT_EQ(net.num_users(1), 2u);
  EXPECT_TRUE(validate(net).empty());
  EXPECT_NEAR(net.max_power[0], dbm_to_watt(46.0), 0.0);
  EXPECT_NEAR(net.max_power[1], 1.0, 1e-15);
  EXPECT_EQ(net.min_rate[1][0], 1.0);
}

TEST(Generate, DeterministicPerIndex) {
  ScenarioConfig cfg;
  cfg.num_femto_bs = 3;
  EXPECT_EQ(generate(cfg, 5), generate(cfg, 5));
  EXPECT_NE(generate(cfg, 5), generate(cfg, 6));
  ScenarioConfig other = cfg;
  other.seed = 2;
  EXPECT_NE(generate(cfg, 5), generate(other, 5));
}

TEST(Generate, SingleCellConfig) {
  ScenarioConfig cfg;
  cfg.num_femto_bs = 0;
  const auto net = generate(cfg, 1);
  EXPECT_EQ(net.num_cells(), 1u);
  EXPECT_TRUE(validate(net).empty());
}

TEST(Placement, DistancesWithinAnnulus) {
  ScenarioConfig cfg;
  cfg.num_femto_bs = 2;
  for (std::uint64_t k = 0; k < 500; ++k) {
    const auto pl = place(cfg, k);
    ASSERT_EQ(pl.bs_xy.size(), 3u);
    EXPECT_NEAR(std::hypot(pl.bs_xy[1].first, pl.bs_xy[1].second), cfg.bs_distance, 1e-9);
    for (std::size_t b = 0; b < 3; ++b) {
      const double lo = b == 0 ? cfg.min_user_dist_macro : cfg.min_user_dist_femto;
      const double hi = b == 0 ? cfg.macro_radius : cfg.femto_radius;
      for (const auto& u : pl.user_xy[b]) {
        const double d = std::hypot(u.first - pl.bs_xy[b].first, u.second - pl.bs_xy[b].second);
        EXPECT_GE(d, lo);
        EXPECT_LE(d, hi);
      }
    }
  }
}

// With shadowing off, gain / path-loss isolates the fading factor.
TEST(Generate, FadingHasUnitMean) {
  ScenarioConfig cfg;
  cfg.shadowing_enabled = false;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::uint64_t k = 0; n < 100000; ++k) {
    const auto net = generate(cfg, k);
    const auto pl = place(cfg, k);
    for (std::size_t b = 0; b < net.num_cells(); ++b)
      for (std::size_t i = 0; i < net.num_users(b); ++i) {
        const auto& u = pl.user_xy[b][i];
        const double d = std::hypot(u.first - pl.bs_xy[b].first, u.second - pl.bs_xy[b].second);
        const double nominal = std::pow(10.0, -path_loss_db(d, b == 0 ? Tier::Macro : Tier::Femto) / 10.0);
        const double f = net.direct_gain[b][i] / nominal;
        EXPECT_GT(f, 0.0);
        sum += f;
        ++n;
      }
  }
  EXPECT_NEAR(sum / static_cast<double>(n), 1.0, 0.05);
}

TEST(Generate, IndicesAreUncorrelated) {
  ScenarioConfig cfg;
  constexpr std::size_t N = 10000;
  std::vector<double> x(N + 1);
  for (std::size_t k = 0; k <= N; ++k) x[k] = std::log(generate(cfg, k).direct_gain[0][0]);
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < N; ++k) {
    mx += x[k];
    my += x[k + 1];
  }
  mx /= N;
  my /= N;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < N; ++k) {
    sxy += (x[k] - mx) * (x[k + 1] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (x[k + 1] - my) * (x[k + 1] - my);
  }
  EXPECT_LT(std::abs(sxy / std::sqrt(sxx * syy)), 0.05);
}

TEST(Generate, AllGainsPositive) {
  ScenarioConfig cfg;
  cfg.num_femto_bs = 2;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const auto net = generate(cfg, k);
    for (std::size_t j = 0; j < net.num_cells(); ++j)
      for (std::size_t b = 0; b < net.num_cells(); ++b)
        for (std::size_t i = 0; i < net.num_users(b); ++i) EXPECT_GT(j == b ? net.direct_gain[b][i] : net.cross(j, b, i), 0.0);
  }
}

TEST(Config, ValidateRejectsBadValues) {
  ScenarioConfig cfg;
  EXPECT_TRUE(validate(cfg).empty());
  cfg.min_user_dist_femto = 50.0;
  ASSERT_EQ(validate(cfg).size(), 1u);
  EXPECT_EQ(validate(cfg)[0].field, "min_user_dist_femto_m");
  EXPECT_THROW(generate(cfg, 0), std::invalid_argument);
}

TEST(Config, JsonRoundTrip) {
  ScenarioConfig cfg;
  cfg.noise_power_dbm = -101.5;
  cfg.seed = 0xFFFFFFFFFFFFFFFFull;
  cfg.min_rate_femto = 0.1 + 0.2;
  EXPECT_EQ(config_from_json(to_json(cfg)), cfg);
  EXPECT_EQ(config_from_json(to_json(ScenarioConfig{})), ScenarioConfig{});
}

TEST(Config, PartialJsonUsesDefaults) {
  const auto cfg = config_from_json(R"({"users_macro": 4, "shadowing_enabled": false})");
  EXPECT_EQ(cfg.users_macro, 4u);
  EXPECT_FALSE(cfg.shadowing_enabled);
  EXPECT_EQ(cfg.femto_radius, 40.0);
}

TEST(Config, UnknownKeysAndBadTypesRejected) {
  EXPECT_THROW(config_from_json(R"({"macro_radius": 500})"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"users_macro": "three"})"), std::invalid_argument);
  EXPECT_THROW(config_from_json("{"), std::invalid_argument);
  EXPECT_THROW(config_from_json("[]"), std::invalid_argument);
}

TEST(Config, Overrides) {
  ScenarioConfig cfg;
  apply_override(cfg, "users_per_cell", "4");
  EXPECT_EQ(cfg.users_macro, 4u);
  EXPECT_EQ(cfg.users_femto, 4u);
  apply_override(cfg, "min_rate", "2.5");
  EXPECT_EQ(cfg.min_rate_macro, 2.5);
  EXPECT_EQ(cfg.min_rate_femto, 2.5);
  apply_override(cfg, "noise_power_dbm", "-94");
  EXPECT_EQ(cfg.noise_power_dbm, -94.0);
  apply_override(cfg, "shadowing_enabled", "false");
  EXPECT_FALSE(cfg.shadowing_enabled);
  EXPECT_THROW(apply_override(cfg, "nope", "1"), std::invalid_argument);
  EXPECT_THROW(apply_override(cfg, "users_macro", "abc"), std::invalid_argument);
}

}  // namespace
}  // namespace noma::scenario
