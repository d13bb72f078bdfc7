#include <benchmark/benchmark.h>

#include "kwflow/builtins.hpp"
#include "kwflow/flow.hpp"
#include "kwflow/green.hpp"
#include "kwflow/spectral.hpp"

namespace {

using namespace kwflow;

void bm_poisson(benchmark::State& state) {
  Grid g = Grid::make(static_cast<int>(state.range(0)));
  ScalarField f = random_smooth_field(g, 7, 4, 1.0);
  for (auto _ : state) {
    ScalarField v = spectral::poisson_inverse(f);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(bm_poisson)->Arg(64)->Arg(128)->Arg(256);

void bm_functional_j(benchmark::State& state) {
  Grid g = Grid::make(static_cast<int>(state.range(0)));
  Surface s = make_surface(g, builtin_phi(g, "cos_x1", 0.5));
  Weight w = builtin_weight(g, "one_plus_half_cos");
  ScalarField u = random_smooth_field(g, 11, 4, 0.5);
  for (auto _ : state) {
    double j = functional_j(s, w, kRhoCritical, u);
    benchmark::DoNotOptimize(j);
  }
}
BENCHMARK(bm_functional_j)->Arg(64)->Arg(256);

void bm_imex_step(benchmark::State& state) {
  Grid g = Grid::make(static_cast<int>(state.range(0)));
  Surface s = make_surface(g, builtin_phi(g, "cos_x1", 0.5));
  Weight w = builtin_weight(g, "one_plus_half_cos");
  FlowConfig cfg;
  cfg.dt_init = 1e-4;
  FlowState st = make_initial_state(s, ScalarField(g, 0.0), cfg.dt_init);
  for (auto _ : state) {
    FlowState next = step(st, s, w, cfg);
    benchmark::DoNotOptimize(next.u.data());
  }
}
BENCHMARK(bm_imex_step)->Arg(64)->Arg(128);

void bm_green(benchmark::State& state) {
  Grid g = Grid::make(static_cast<int>(state.range(0)));
  Surface s = make_surface(g, builtin_phi(g, "cos_x1", 0.5));
  for (auto _ : state) {
    GreenData gd = green_function(s, {g.n / 2, g.n / 4});
    fit_regular_part(s, gd);
    benchmark::DoNotOptimize(gd.A);
  }
}
BENCHMARK(bm_green)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
