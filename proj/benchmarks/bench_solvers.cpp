// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "noma/closedform.hpp"
#include "noma/powermin.hpp"
#include "noma/rates.hpp"
#include "noma/scenario.hpp"
#include "noma/solvers.hpp"

namespace {

using namespace noma;

NetworkInstance network(std::size_t femto, std::size_t users) {
  scenario::ScenarioConfig cfg;
  cfg.num_femto_bs = femto;
  cfg.users_macro = users;
  cfg.users_femto = users;
  cfg.min_rate_macro = 0.5;
  cfg.min_rate_femto = 0.5;
  return scenario::generate(cfg, 3);
}

void BM_SumratePowers(benchmark::State& state) {
  closedform::CellProblem c;
  c.budget = 10.0;
  for (int i = 0; i < state.range(0); ++i) {
    c.h_tilde.push_back(1e3 * (i + 1));
    c.min_rate.push_back(1.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(closedform::sumrate_powers(c));
}
BENCHMARK(BM_SumratePowers)->Arg(2)->Arg(4)->Arg(8);

void BM_EffectiveCinr(benchmark::State& state) {
  const auto net = network(static_cast<std::size_t>(state.range(0)), 4);
  const auto alpha = AlphaVector::ones(net.num_cells());
  for (auto _ : state) benchmark::DoNotOptimize(rates::cinr_order(net, alpha));
}
BENCHMARK(BM_EffectiveCinr)->Arg(1)->Arg(4);

void BM_PowerMin(benchmark::State& state) {
  const auto net = network(static_cast<std::size_t>(state.range(0)), 2);
  const auto zero = PowerAllocation::zeros(net);
  for (auto _ : state) benchmark::DoNotOptimize(powermin::run(net, zero));
}
BENCHMARK(BM_PowerMin)->Arg(1)->Arg(3);

void BM_SimplexRandomDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  solvers::LinearProgram lp;
  lp.objective.assign(n, -1.0);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<double> a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = 1.0 + static_cast<double>((r * 7 + j * 3) % 5);
    lp.add_row(std::move(a), solvers::RowSense::LessEqual, 10.0 + static_cast<double>(r));
  }
  for (auto _ : state) benchmark::DoNotOptimize(solvers::solve_lp(lp));
}
BENCHMARK(BM_SimplexRandomDense)->Arg(8)->Arg(32);

}  // namespace
