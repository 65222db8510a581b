// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <numeric>

#include "noma/closedform.hpp"
#include "noma/frpa.hpp"
#include "noma/jrpa.hpp"
#include "noma/jspa.hpp"
#include "noma/rates.hpp"
#include "noma_test/gen.hpp"

namespace noma::frpa {
namespace {

testing::NetworkShape two_cells() {
  testing::NetworkShape s{{2, 2}};
  s.direct_lo = 1e-11;
  s.direct_hi = 1e-8;
  s.cross_lo = 1e-13;
  s.cross_hi = 1e-10;
  s.rate_hi = 1.5;
  return s;
}

TEST(Frpa, NecessaryConditionFollowsOrder) {
  const auto net = testing::single_cell({1.0, 2.0}, 1.0, {0.0, 0.0});
  const AlphaVector one = AlphaVector::ones(1);
  EXPECT_TRUE(sic_necessary_holds(net, one, DecodingOrder{{{0, 1}}}));
  EXPECT_FALSE(sic_necessary_holds(net, one, DecodingOrder{{{1, 0}}}));
  // Equal CINR satisfies the weak inequality either way.
  const auto tie = testing::single_cell({2.0, 2.0}, 1.0, {0.0, 0.0});
  EXPECT_TRUE(sic_necessary_holds(tie, one, DecodingOrder{{{1, 0}}}));
}

TEST(Frpa, SingleCellLpEqualsPowerMinimum) {
  testing::Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::random_cell(rng, rng.index(1, 4), 2.0);
    const auto net = testing::single_cell(c.h_tilde, c.budget, c.min_rate);
    const auto order = rates::cnr_order(net);
    const auto v = frpa_feasibility_lp(net, order);
    const auto pm = closedform::powermin_powers(c);
    const double total = std::accumulate(pm.begin(), pm.end(), 0.0);
    if (total > c.budget * (1 + 1e-9)) {
      EXPECT_FALSE(v.feasible);
      continue;
    }
    ASSERT_TRUE(v.feasible);
    EXPECT_NEAR(v.total_power, total, 1e-9 * (1.0 + total));
    for (std::size_t i = 0; i < pm.size(); ++i) EXPECT_NEAR(v.powers.power[0][i], pm[i], 1e-9 * (1.0 + total));
  }
}

TEST(Frpa, BoundedByJspaAndImpliesJrpaFeasibility) {
  testing::Rng rng(4);
  std::size_t frpa_feasible = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto net = testing::random_network(rng, two_cells());
    jspa::GridSettings g;
    g.eps_alpha = 0.05;
    const auto order = rates::cnr_order(net);
    const auto f = solve_frpa(net, order, g);
    const auto j = jspa::solve_jspa(net, g);
    const auto lp = frpa_feasibility_lp(net, order);
    if (!f.feasible) continue;
    ++frpa_feasible;
    EXPECT_TRUE(j.feasible);
    EXPECT_LE(f.sum_rate, j.sum_rate + 1e-9);
    EXPECT_TRUE(sic_necessary_holds(net, f.alpha, order));
    // A feasible grid point is a feasible LP point.
    EXPECT_TRUE(lp.feasible);
    EXPECT_TRUE(jrpa::jrpa_feasibility_lp(net, order).feasible);
    EXPECT_EQ(f.order.order, order.order);
  }
  EXPECT_GT(frpa_feasible, 5u);
}

TEST(Frpa, LpFeasibilityImpliesJrpaLpFeasibility) {
  testing::Rng rng(6);
  std::size_t checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto shape = two_cells();
    shape.users = {rng.index(1, 3), rng.index(1, 3), rng.index(0, 2)};
    if (shape.users.back() == 0) shape.users.pop_back();
    const auto net = testing::random_network(rng, shape);
    const auto order = rates::cnr_order(net);
    const auto f = frpa_feasibility_lp(net, order);
    const auto j = jrpa::jrpa_feasibility_lp(net, order);
    if (f.feasible) {
      ++checked;
      EXPECT_TRUE(j.feasible) << "trial " << trial;
      EXPECT_LE(j.total_power, f.total_power * (1 + 1e-9));
    }
  }
  EXPECT_GT(checked, 30u);
}

TEST(Frpa, CombinedCapBindsTheNecessaryCondition) {
  testing::Rng rng(9);
  std::size_t binding = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto shape = two_cells();
    shape.users = {1, 2};
    shape.cross_hi = 1e-8;
    const auto net = testing::random_network(rng, shape);
    const auto order = rates::cnr_order(net);
    auto powers = PowerAllocation::zeros(net);
    const double cap = combined_power_cap(net, 0, order, powers);
    EXPECT_LE(cap, net.max_power[0]);
    if (cap >= net.max_power[0] || cap <= 0.0) continue;
    ++binding;
    AlphaVector at(std::vector<double>{cap / net.max_power[0], 1.0});
    const auto cinr = rates::effective_cinr(net, at);
    const auto& cell = order.order[1];
    EXPECT_NEAR(cinr(1, cell[0]), cinr(1, cell[1]), 1e-9 * cinr(1, cell[1]));
    AlphaVector below(std::vector<double>{0.99 * cap / net.max_power[0], 1.0});
    EXPECT_TRUE(sic_necessary_holds(net, below, order));
    AlphaVector above(std::vector<double>{1.01 * cap / net.max_power[0], 1.0});
    EXPECT_FALSE(sic_necessary_holds(net, above, order));
  }
  EXPECT_GT(binding, 5u);
}

TEST(Frpa, RejectsInvalidOrder) {
  const auto net = testing::single_cell({1.0, 2.0}, 1.0, {0.0, 0.0});
  EXPECT_THROW(solve_frpa(net, DecodingOrder{{{0, 0}}}), std::invalid_argument);
  EXPECT_THROW(frpa_feasibility_lp(net, DecodingOrder{{{0}}}), std::invalid_argument);
}

}  // namespace
}  // namespace noma::frpa
