#include <benchmark/benchmark.h>

#include "dualproc/experiment.hpp"
#include "dualproc/oracle.hpp"

namespace {

using namespace dualproc;

void BM_RunTrialDualMidPractice(benchmark::State& state) {
  const GridWorld world{GridSpec{}};
  ControllerSpec spec;
  spec.kind = ControllerKind::InterleavedDual;
  spec.factor = 1;
  spec.chunk_size = 8;
  for (auto _ : state) {
    state.PauseTiming();
    LookupTable table(world, 0.9, 0.1);
    Controller controller(spec, 4);
    Rng rng(7);
    ExplorationPolicy policy;
    RunCaps caps;
    for (int i = 1; i <= 20; ++i) run_trial(controller, world, table, i, policy, caps, rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(run_trial(controller, world, table, 21, policy, caps, rng));
  }
}
BENCHMARK(BM_RunTrialDualMidPractice)->Unit(benchmark::kMicrosecond);

void BM_ValueIteration(benchmark::State& state) {
  const GridWorld world{GridSpec{}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(value_iteration(world, 0.9));
  }
}
BENCHMARK(BM_ValueIteration)->Unit(benchmark::kMicrosecond);

void BM_SmallExperiment(benchmark::State& state) {
  const GridWorld world{GridSpec{}};
  ExperimentConfig config;
  config.controller.kind = ControllerKind::InterleavedDual;
  config.controller.factor = 1;
  config.trials = 25;
  config.seeds = {1, 2, 3, 4};
  config.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(world, config));
  }
}
BENCHMARK(BM_SmallExperiment)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
