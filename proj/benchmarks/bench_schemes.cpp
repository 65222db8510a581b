// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "noma/frpa.hpp"
#include "noma/jrpa.hpp"
#include "noma/jspa.hpp"
#include "noma/scenario.hpp"

namespace {

using namespace noma;

NetworkInstance two_cells() {
  scenario::ScenarioConfig cfg;
  cfg.users_macro = 2;
  cfg.users_femto = 2;
  cfg.min_rate_macro = 0.5;
  cfg.min_rate_femto = 0.5;
  return scenario::generate(cfg, 5);
}

void BM_Jspa(benchmark::State& state) {
  const auto net = two_cells();
  jspa::GridSettings g;
  g.eps_alpha = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jspa::solve_jspa(net, g));
}
BENCHMARK(BM_Jspa)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Frpa(benchmark::State& state) {
  const auto net = two_cells();
  jspa::GridSettings g;
  g.eps_alpha = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(frpa::solve_frpa(net, g));
}
BENCHMARK(BM_Frpa)->Unit(benchmark::kMillisecond);

void BM_Jrpa(benchmark::State& state) {
  const auto net = two_cells();
  jrpa::JrpaSettings s;
  s.init = static_cast<jrpa::InitMethod>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jrpa::solve_jrpa(net, s));
}
BENCHMARK(BM_Jrpa)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
