// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "noma/solvers.hpp"
#include "noma_test/gen.hpp"

namespace noma::solvers {
namespace {

constexpr double kLn2 = std::numbers::ln2;

TEST(Barrier, LogRateTerms) {
  EXPECT_NEAR(log_rate_term(1.0), 0.0, 1e-15);
  EXPECT_NEAR(log_rate_term(2.0), std::log(3.0), 1e-15);
  EXPECT_NEAR(log_rate_slope(1.0), 2.0 * kLn2, 1e-15);
  EXPECT_NEAR(log_rate_slope(15.0), kLn2 * 32768.0 / 32767.0, 1e-15);
  EXPECT_NEAR(log_rate_slope(15.0), 0.69317, 1e-5);
  // Finite difference of the term matches the slope.
  for (double r : {0.1, 0.5, 2.0, 7.0}) {
    const double fd = (log_rate_term(r + 1e-6) - log_rate_term(r - 1e-6)) / 2e-6;
    EXPECT_NEAR(log_rate_slope(r), fd, 1e-6 * log_rate_slope(r));
  }
}

ConvexSubproblem random_problem(testing::Rng& rng, std::size_t n) {
  ConvexSubproblem sp;
  sp.num_vars = n;
  for (std::size_t j = 0; j < n; ++j) sp.objective.push_back(rng.uniform(0.1, 1.0));
  for (int c = 0; c < 3; ++c) {
    LogSumExpConstraint l;
    l.constant = rng.coin() ? rng.uniform(0.5, 2.0) : 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (rng.coin(0.7) || (l.constant == 0.0 && l.exp_terms.empty() && j + 1 == n))
        l.exp_terms.push_back({j, rng.uniform(-2.0, 2.0)});
    l.affine.push_back({rng.index(0, n - 1), rng.uniform(-1.0, 1.0)});
    l.offset = rng.uniform(-3.0, 0.0);
    sp.log_sum_exp.push_back(l);
  }
  LinearConstraint lin;
  for (std::size_t j = 0; j < n; ++j) lin.terms.push_back({j, rng.uniform(-1.0, 1.0)});
  lin.rhs = rng.uniform(0.0, 2.0);
  sp.linear.push_back(lin);
  return sp;
}

TEST(Barrier, AnalyticGradientsMatchFiniteDifferences) {
  testing::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.index(1, 6);
    const auto sp = random_problem(rng, n);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform(-3.0, 3.0);
    EXPECT_LT(check_gradients(sp, x), 1e-5) << "trial " << trial;
  }
}

TEST(Barrier, SymmetricLogSumExpOptimum) {
  // max x + y s.t. ln(e^x + e^y) <= ln 2 and x <= 5: optimum at the origin.
  ConvexSubproblem sp;
  sp.num_vars = 2;
  sp.objective = {1.0, 1.0};
  sp.log_sum_exp.push_back({0.0, {{0, 0.0}, {1, 0.0}}, {}, -std::log(2.0)});
  sp.linear.push_back({{{0, 1.0}}, 5.0});
  BarrierSettings s;
  s.outer_eps = 1e-9;
  const std::vector<double> start{-4.0, -4.0};
  const auto res = solve_subproblem(sp, s, start);
  ASSERT_EQ(res.status, BarrierStatus::Optimal) << res.message;
  EXPECT_NEAR(res.x[0], 0.0, 1e-4);
  EXPECT_NEAR(res.x[1], 0.0, 1e-4);
  EXPECT_NEAR(res.value, 0.0, 1e-8);
  EXPECT_LE(max_violation(sp, res.x), 0.0);
}

TEST(Barrier, PhaseOneFromInfeasibleStart) {
  // max x s.t. ln(1 + e^x) <= ln 3 (x <= ln 2), x >= 0.
  ConvexSubproblem sp;
  sp.num_vars = 1;
  sp.objective = {1.0};
  sp.log_sum_exp.push_back({1.0, {{0, 0.0}}, {}, -std::log(3.0)});
  sp.linear.push_back({{{0, -1.0}}, 0.0});
  BarrierSettings s;
  s.outer_eps = 1e-10;
  const std::vector<double> start{10.0};
  const auto res = solve_subproblem(sp, s, start);
  ASSERT_EQ(res.status, BarrierStatus::Optimal) << res.message;
  EXPECT_NEAR(res.x[0], std::log(2.0), 1e-8);
}

TEST(Barrier, DetectsEmptyInterior) {
  ConvexSubproblem sp;
  sp.num_vars = 1;
  sp.objective = {1.0};
  sp.linear.push_back({{{0, 1.0}}, -1.0});
  sp.linear.push_back({{{0, -1.0}}, -1.0});
  const std::vector<double> start{0.0};
  EXPECT_EQ(solve_subproblem(sp, {}, start).status, BarrierStatus::Infeasible);

  ConvexSubproblem lse;
  lse.num_vars = 1;
  lse.objective = {1.0};
  lse.log_sum_exp.push_back({2.0, {{0, 0.0}}, {}, -std::log(1.5)});  // ln(2 + e^x) <= ln 1.5
  const std::vector<double> s1{0.0};
  EXPECT_EQ(solve_subproblem(lse, {}, s1).status, BarrierStatus::Infeasible);
}

TEST(Barrier, RejectsMalformedInput) {
  ConvexSubproblem sp;
  sp.num_vars = 2;
  sp.objective = {1.0};
  const std::vector<double> start{0.0, 0.0};
  EXPECT_THROW(solve_subproblem(sp, {}, start), std::invalid_argument);
  sp.objective = {1.0, 1.0};
  sp.linear.push_back({{{3, 1.0}}, 1.0});
  EXPECT_THROW(solve_subproblem(sp, {}, start), std::invalid_argument);
  sp.linear.clear();
  sp.log_sum_exp.push_back({-1.0, {{0, 0.0}}, {}, 0.0});
  EXPECT_THROW(solve_subproblem(sp, {}, start), std::invalid_argument);
  const std::vector<double> short_start{0.0};
  sp.log_sum_exp.clear();
  EXPECT_THROW(solve_subproblem(sp, {}, short_start), std::invalid_argument);
}

// Random bounded problems: the result is feasible and no better point is
// found along random feasible directions.
TEST(Barrier, RandomProblemsReachFeasibleOptimum) {
  testing::Rng rng(17);
  std::size_t solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = rng.index(1, 4);
    auto sp = random_problem(rng, n);
    for (std::size_t j = 0; j < n; ++j) {
      sp.linear.push_back({{{j, 1.0}}, 4.0});
      sp.linear.push_back({{{j, -1.0}}, 4.0});
    }
    BarrierSettings s;
    s.outer_eps = 1e-9;
    const auto res = solve_subproblem(sp, s, std::vector<double>(n, 0.0));
    if (res.status != BarrierStatus::Optimal) continue;
    ++solved;
    EXPECT_LE(max_violation(sp, res.x), 1e-12);
    for (int probe = 0; probe < 200; ++probe) {
      std::vector<double> y(n);
      for (auto& v : y) v = rng.uniform(-4.0, 4.0);
      if (max_violation(sp, y) > 0.0) continue;
      double val = 0.0;
      for (std::size_t j = 0; j < n; ++j) val += sp.objective[j] * y[j];
      EXPECT_LE(val, res.value + 1e-6);
    }
  }
  EXPECT_GT(solved, 20u);
}

}  // namespace
}  // namespace noma::solvers
