#include <benchmark/benchmark.h>

#include "wpcn/sweep.hpp"

namespace {

wpcn::SweepSpec bench_spec() {
    wpcn::SweepSpec spec;
    spec.base_params.harvest_efficiency = 0.1;
    spec.base_params.decode_set_cap = 3;
    spec.policy_ids = {wpcn::PolicyId::SrsNcsi, wpcn::PolicyId::MrsAcsi};
    spec.axis_values = {0.5, 1.0, 1.5, 2.0};
    spec.slots_per_point = 20'000;
    spec.replications = 2;
    return spec;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto spec = bench_spec();
    for (auto _ : state) benchmark::DoNotOptimize(wpcn::run_sweep_serial(spec));
}

void BM_SweepOpenMP(benchmark::State& state) {
    const auto spec = bench_spec();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(wpcn::run_sweep(spec, threads));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOpenMP)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
