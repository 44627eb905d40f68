#include <benchmark/benchmark.h>

#include "rvea/algorithms.hpp"
#include "rvea/step_operators.hpp"
#include "rvea/token_process.hpp"

namespace {

using namespace rvea;

void BM_Step(benchmark::State& state, StepOperatorKind kind) {
    const auto r = state.range(0);
    const StepOperator op(kind, MetricKind::Ring, r);
    Rng rng(1);
    Value x = r / 2;
    for (auto _ : state) {
        x = *op.apply_unchecked(x, rng);
        benchmark::DoNotOptimize(x);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_Step, uniform, StepOperatorKind::Uniform)->Arg(16)->Arg(1024);
BENCHMARK_CAPTURE(BM_Step, pm1, StepOperatorKind::PlusMinusOne)->Arg(16)->Arg(1024);
BENCHMARK_CAPTURE(BM_Step, harmonic, StepOperatorKind::Harmonic)->Arg(16)->Arg(1024)->Arg(1 << 20);

void BM_HarmonicTable(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(HarmonicTable(state.range(0)));
}
BENCHMARK(BM_HarmonicTable)->Arg(1024)->Arg(1 << 20);

void BM_Run(benchmark::State& state, AlgorithmKind algo, StepOperatorKind op) {
    RunConfig cfg{.algorithm = algo,
                  .op = op,
                  .instance = ProblemInstance::all_zero(SpaceParams(state.range(0), state.range(1)),
                                                        MetricKind::Interval),
                  .seed = 0,
                  .iteration_cap = kDefaultIterationCap,
                  .initial_point = std::nullopt,
                  .trace_potentials = {}};
    std::uint64_t iterations = 0;
    for (auto _ : state) {
        cfg.seed++;
        const auto rec = run(cfg);
        iterations += *rec.hitting_time;
    }
    state.counters["iterations/s"] = benchmark::Counter(static_cast<double>(iterations), benchmark::Counter::kIsRate);
}
BENCHMARK_CAPTURE(BM_Run, rls_uniform, AlgorithmKind::RLS, StepOperatorKind::Uniform)->Args({100, 3});
BENCHMARK_CAPTURE(BM_Run, ea_uniform, AlgorithmKind::OnePlusOneEA, StepOperatorKind::Uniform)->Args({100, 3});
BENCHMARK_CAPTURE(BM_Run, ea_harmonic, AlgorithmKind::OnePlusOneEA, StepOperatorKind::Harmonic)->Args({50, 256});

void BM_TokenExact(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(token_expected_hitting_time_exact(state.range(0), StepSizeLaw::harmonic()));
    }
}
BENCHMARK(BM_TokenExact)->Arg(255)->Arg(4095);

void BM_TokenRun(benchmark::State& state) {
    TokenConfig cfg{.r = state.range(0), .distribution = StepSizeLaw::harmonic()};
    for (auto _ : state) {
        cfg.seed++;
        benchmark::DoNotOptimize(token_run(cfg));
    }
}
BENCHMARK(BM_TokenRun)->Arg(255)->Arg(4095);

} // namespace

BENCHMARK_MAIN();
