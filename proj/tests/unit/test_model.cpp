// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "noma/model.hpp"
#include "noma_test/gen.hpp"

namespace noma {
namespace {

NetworkInstance two_cells() {
  testing::Rng rng(3);
  testing::NetworkShape s;
  s.users = {3, 2};
  return testing::random_network(rng, s);
}

TEST(Validate, WellFormedInstanceHasNoViolations) { EXPECT_TRUE(validate(two_cells()).empty()); }

TEST(Validate, ZeroNoiseIsNamed) {
  auto net = two_cells();
  net.noise_power[1][0] = 0.0;
  const auto v = validate(net);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "noise_power[1][0]");
}

TEST(Validate, NegativeMinRateIsNamed) {
  auto net = two_cells();
  net.min_rate[0][2] = -1.0;
  const auto v = validate(net);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].field.find("min_rate"), std::string::npos);
}

TEST(Validate, ShapeMismatchAndSelfCrossGain) {
  auto net = two_cells();
  net.direct_gain[0].pop_back();
  EXPECT_FALSE(validate(net).empty());
  net = two_cells();
  net.cross_gain[0][0] = {1.0, 1.0, 1.0};
  EXPECT_FALSE(validate(net).empty());
  net = two_cells();
  net.max_power[1] = 0.0;
  EXPECT_FALSE(validate(net).empty());
}

TEST(Network, CrossIsZeroOnDiagonal) {
  const auto net = two_cells();
  EXPECT_EQ(net.cross(0, 0, 1), 0.0);
  EXPECT_EQ(net.cross(1, 0, 2), net.cross_gain[1][0][2]);
  EXPECT_EQ(net.total_users(), 5u);
}

TEST(CellPower, Sums) {
  PowerAllocation p;
  p.power = {{}, {2.0, 3.0}, {7.5}};
  EXPECT_EQ(cell_power(p, 0), 0.0);
  EXPECT_EQ(cell_power(p, 1), 5.0);
  EXPECT_EQ(cell_power(p, 2), 7.5);
  EXPECT_THROW(cell_power(p, 3), std::out_of_range);
}

TEST(PowerAllocation, EqualSplit) {
  const auto net = two_cells();
  const auto p = PowerAllocation::equal_split(net);
  EXPECT_DOUBLE_EQ(cell_power(p, 0), net.max_power[0]);
  EXPECT_DOUBLE_EQ(p.power[1][0], net.max_power[1] / 2.0);
}

TEST(DecodingOrder, SuccessorsAndPosition) {
  DecodingOrder o{{{2, 0, 1}}};
  EXPECT_EQ(o.position(0, 0), 1u);
  EXPECT_EQ(o.successors(0, 2), (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(o.successors(0, 1).empty());
  EXPECT_THROW(o.position(0, 5), std::out_of_range);
}

TEST(DecodingOrder, Validity) {
  EXPECT_TRUE((DecodingOrder{{{1, 0}, {0}}}).is_valid({2, 1}));
  EXPECT_FALSE((DecodingOrder{{{1, 1}, {0}}}).is_valid({2, 1}));
  EXPECT_FALSE((DecodingOrder{{{0, 2}, {0}}}).is_valid({2, 1}));
  EXPECT_FALSE((DecodingOrder{{{0, 1}}}).is_valid({2, 1}));
}

// Every permutation of up to 5 users survives the lambda round trip, and the
// lambda it produces is self-decoding, one-directional and transitive.
TEST(DecodingOrder, LambdaRoundTripAllPermutations) {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      DecodingOrder o{{perm}};
      const auto lambda = o.to_lambda(0);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_EQ(lambda[i][i], 1);
        for (std::size_t k = 0; k < n; ++k) {
          if (k != i) {
            EXPECT_EQ(lambda[i][k] + lambda[k][i], 1);
          }
          for (std::size_t m = 0; m < n; ++m)
            if (lambda[i][k] && lambda[k][m]) {
              EXPECT_EQ(lambda[i][m], 1);
            }
        }
      }
      EXPECT_EQ(DecodingOrder::cell_order_from_lambda(lambda), perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(DecodingOrder, NonTransitiveLambdaRejected) {
  // 0 -> 1 -> 2 -> 0 cycle.
  LambdaMatrix cyc = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  EXPECT_THROW(DecodingOrder::cell_order_from_lambda(cyc), std::invalid_argument);
  LambdaMatrix both = {{1, 1}, {1, 1}};
  EXPECT_THROW(DecodingOrder::cell_order_from_lambda(both), std::invalid_argument);
}

TEST(Scheme, ParseAliases) {
  EXPECT_EQ(parse_scheme("jspa"), Scheme::JSPA);
  EXPECT_EQ(parse_scheme("FRPA"), Scheme::FRPA);
  EXPECT_EQ(parse_scheme("semi-centralized"), Scheme::SemiCentralized);
  EXPECT_EQ(parse_scheme("fully_distributed"), Scheme::FullyDistributed);
  EXPECT_EQ(parse_scheme("fd"), Scheme::FullyDistributed);
  EXPECT_EQ(parse_scheme("power-min"), Scheme::PowerMin);
  EXPECT_THROW(parse_scheme("nope"), std::invalid_argument);
  for (Scheme s : {Scheme::JSPA, Scheme::JRPA, Scheme::FRPA, Scheme::PowerMin, Scheme::FullyDistributed,
                   Scheme::SemiCentralized})
    EXPECT_EQ(parse_scheme(to_string(s)), s);
}

}  // namespace
}  // namespace noma
