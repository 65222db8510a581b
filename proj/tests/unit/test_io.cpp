// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>

#include "noma/io.hpp"
#include "noma/scenario.hpp"
#include "noma_test/gen.hpp"

namespace noma::io {
namespace {

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

TEST(NetworkJson, BitExactRoundTrip) {
  testing::Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    testing::NetworkShape s;
    s.users = {rng.index(1, 4), rng.index(1, 4), rng.index(1, 3)};
    const auto net = testing::random_network(rng, s);
    const auto back = network_from_json(to_json(net));
    ASSERT_EQ(back, net);
    for (std::size_t b = 0; b < net.num_cells(); ++b)
      for (std::size_t i = 0; i < net.num_users(b); ++i) ASSERT_TRUE(bit_equal(back.direct_gain[b][i], net.direct_gain[b][i]));
  }
  scenario::ScenarioConfig cfg;
  const auto gen = scenario::generate(cfg, 3);
  EXPECT_EQ(network_from_json(to_json(gen, -1)), gen);
}

TEST(NetworkJson, RejectsMalformedAndInvalid) {
  EXPECT_THROW(network_from_json("{"), std::invalid_argument);
  EXPECT_THROW(network_from_json(R"({"format": "noma.network"})"), std::invalid_argument);
  auto net = testing::single_cell({1.0, 2.0}, 5.0, {0.0, 0.0});
  std::string text = to_json(net);
  net.noise_power[0][0] = -1.0;
  EXPECT_THROW(network_from_json(to_json(net)), std::invalid_argument);
  EXPECT_NO_THROW(network_from_json(text));
}

TEST(ReportJson, RoundTrip) {
  SolveReport r;
  r.scheme = Scheme::FRPA;
  r.rates = {{1.0, 2.0 / 3.0}, {0.1}};
  r.sum_rate = 1.0 + 2.0 / 3.0 + 0.1;
  r.alpha = AlphaVector({0.37, 1.0});
  r.order = DecodingOrder{{{1, 0}, {0}}};
  r.powers.power = {{1e-3, 39.8}, {0.5}};
  r.powers.feasible_cell = {true, false};
  r.feasible = true;
  r.trace = {1.0, 1.5, 1.75};
  r.oracle_evaluated = true;
  r.oracle_feasible = true;
  r.samples_evaluated = 10201;
  r.samples_sic_rejected = 5;
  r.samples_power_infeasible = 7;
  r.note = "x";
  EXPECT_EQ(report_from_json(to_json(r)), r);
  r.oracle_evaluated = false;
  r.oracle_feasible = false;
  r.note.clear();
  EXPECT_EQ(report_from_json(to_json(r)), r);
}

TEST(Files, ReadWriteAndMissing) {
  const auto dir = std::filesystem::temp_directory_path() / "noma_io_test";
  std::filesystem::create_directories(dir);
  write_file(dir / "a.txt", "hello\n");
  EXPECT_EQ(read_file(dir / "a.txt"), "hello\n");
  EXPECT_THROW(read_file(dir / "missing.txt"), std::runtime_error);
  EXPECT_THROW(write_file(dir / "no_such_dir" / "x.txt", "x"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace noma::io
