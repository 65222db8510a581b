// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "noma/solvers.hpp"
#include "noma_test/gen.hpp"
#include "noma_test/lp_oracle.hpp"

namespace noma::solvers {
namespace {

TEST(Lp, TextbookMaximization) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18: optimum 36 at (2, 6).
  LinearProgram lp;
  lp.objective = {-3.0, -5.0};
  lp.add_row({1.0, 0.0}, RowSense::LessEqual, 4.0);
  lp.add_row({0.0, 2.0}, RowSense::LessEqual, 12.0);
  lp.add_row({3.0, 2.0}, RowSense::LessEqual, 18.0);
  const auto res = solve_lp(lp);
  ASSERT_EQ(res.status, LpStatus::Optimal);
  EXPECT_NEAR(res.value, -36.0, 1e-9);
  EXPECT_NEAR(res.x[0], 2.0, 1e-9);
  EXPECT_NEAR(res.x[1], 6.0, 1e-9);
}

TEST(Lp, GreaterEqualAndEqualityRows) {
  // min x + 2y + 3z, x + y + z = 6, y + z >= 4, z >= 1.
  LinearProgram lp;
  lp.objective = {1.0, 2.0, 3.0};
  lp.add_row({1.0, 1.0, 1.0}, RowSense::Equal, 6.0);
  lp.add_row({0.0, 1.0, 1.0}, RowSense::GreaterEqual, 4.0);
  lp.add_row({0.0, 0.0, 1.0}, RowSense::GreaterEqual, 1.0);
  const auto res = solve_lp(lp);
  ASSERT_EQ(res.status, LpStatus::Optimal);
  EXPECT_NEAR(res.value, 2.0 + 6.0 + 3.0, 1e-9);
  EXPECT_LE(max_scaled_residual(lp, res.x), 1e-9);
}

TEST(Lp, LowerBoundsShiftTheFeasibleSet) {
  LinearProgram lp;
  lp.objective = {1.0, 1.0};
  lp.lower_bounds = {-2.0, 0.5};
  lp.add_row({1.0, 1.0}, RowSense::GreaterEqual, -1.0);
  const auto res = solve_lp(lp);
  ASSERT_EQ(res.status, LpStatus::Optimal);
  EXPECT_NEAR(res.value, -1.0, 1e-9);
  EXPECT_GE(res.x[0], -2.0 - 1e-12);
  EXPECT_GE(res.x[1], 0.5 - 1e-12);
}

TEST(Lp, DetectsInfeasibleAndUnbounded) {
  LinearProgram bad;
  bad.objective = {1.0, 1.0};
  bad.add_row({1.0, 1.0}, RowSense::LessEqual, 1.0);
  bad.add_row({1.0, 1.0}, RowSense::GreaterEqual, 2.0);
  EXPECT_EQ(solve_lp(bad).status, LpStatus::Infeasible);

  LinearProgram open;
  open.objective = {-1.0, 0.0};
  open.add_row({1.0, -1.0}, RowSense::LessEqual, 1.0);
  EXPECT_EQ(solve_lp(open).status, LpStatus::Unbounded);
}

TEST(Lp, DegenerateCycleProneInstance) {
  // Beale's example cycles under the largest-coefficient rule.
  LinearProgram lp;
  lp.objective = {-0.75, 20.0, -0.5, 6.0};
  lp.add_row({0.25, -8.0, -1.0, 9.0}, RowSense::LessEqual, 0.0);
  lp.add_row({0.5, -12.0, -0.5, 3.0}, RowSense::LessEqual, 0.0);
  lp.add_row({0.0, 0.0, 1.0, 0.0}, RowSense::LessEqual, 1.0);
  const auto res = solve_lp(lp);
  ASSERT_EQ(res.status, LpStatus::Optimal);
  EXPECT_NEAR(res.value, -1.25, 1e-9);
}

TEST(Lp, RejectsDimensionMismatch) {
  LinearProgram lp;
  lp.objective = {1.0, 1.0};
  lp.add_row({1.0}, RowSense::LessEqual, 1.0);
  EXPECT_THROW(solve_lp(lp), std::invalid_argument);
  lp.rows.clear();
  lp.lower_bounds = {0.0};
  EXPECT_THROW(solve_lp(lp), std::invalid_argument);
}

// Random bounded LPs with up to 6 variables against vertex enumeration.
TEST(Lp, MatchesVertexEnumeration) {
  testing::Rng rng(11);
  std::size_t optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng.index(1, 6);
    const std::size_t m = rng.index(1, 6);
    LinearProgram lp;
    for (std::size_t j = 0; j < n; ++j) lp.objective.push_back(rng.uniform(-3.0, 3.0));
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<double> a(n);
      for (auto& v : a) v = rng.uniform(-2.0, 2.0);
      const double u = rng.uniform(0.0, 1.0);
      const RowSense s = u < 0.6 ? RowSense::LessEqual : u < 0.9 ? RowSense::GreaterEqual : RowSense::Equal;
      lp.add_row(a, s, rng.uniform(-2.0, 4.0));
    }
    // Box keeps the problem bounded.
    std::vector<double> ones(n, 1.0);
    lp.add_row(ones, RowSense::LessEqual, 10.0);
    const auto oracle = testing::enumerate_vertices(lp);
    const auto res = solve_lp(lp);
    if (!oracle.feasible) {
      EXPECT_EQ(res.status, LpStatus::Infeasible) << "trial " << trial;
      ++infeasible;
      continue;
    }
    ASSERT_EQ(res.status, LpStatus::Optimal) << "trial " << trial;
    EXPECT_NEAR(res.value, oracle.value, 1e-7 * (1.0 + std::abs(oracle.value))) << "trial " << trial;
    EXPECT_LE(max_scaled_residual(lp, res.x), 1e-8);
    ++optimal;
  }
  EXPECT_GT(optimal, 50u);
  EXPECT_GT(infeasible, 10u);
}

}  // namespace
}  // namespace noma::solvers
