#include <benchmark/benchmark.h>

#include "openslice/bell.hpp"
#include "openslice/checker.hpp"
#include "openslice/classical.hpp"
#include "openslice/quantum.hpp"
#include "openslice/random.hpp"
#include "openslice/spacetime.hpp"

namespace {

using namespace openslice;

const classical::BouncerParams kParams{3.0, 4.0, 4.0, 1.0, -1.0, 1.0,
                                       {0.0, -1.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}};

void BM_Boost(benchmark::State& state) {
    const spacetime::FourVector v{0.3, 1.7, -0.2, 0.9};
    double chi = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(spacetime::boost(v, chi));
        chi = -chi;
    }
}
BENCHMARK(BM_Boost);

void BM_SupportOnSlice(benchmark::State& state) {
    const spacetime::SpacelikeSlice slice{-0.5, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(classical::support_on_slice(kParams, slice, {}));
    }
}
BENCHMARK(BM_SupportOnSlice);

void BM_MeasureSigmaY(benchmark::State& state) {
    const quantum::TwoSpinState initial = quantum::prepare_initial();
    auto engine = rng::make_engine(1, "bench");
    for (auto _ : state) {
        benchmark::DoNotOptimize(quantum::measure_sigma_y(initial, 1, engine));
    }
}
BENCHMARK(BM_MeasureSigmaY);

void BM_QuantumVerdict(benchmark::State& state) {
    const checker::QuantumTable table = checker::build_quantum_table(
        {0.0, -1.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0},
        {quantum::Observer::Alice, 0.0, -0.5}, {quantum::Observer::Bob, 0.0, 0.5});
    for (auto _ : state) {
        benchmark::DoNotOptimize(checker::verdict(table));
    }
}
BENCHMARK(BM_QuantumVerdict);

void BM_ClassicalVerdict(benchmark::State& state) {
    const checker::ClassicalTable table =
        checker::build_classical_table(kParams, {-0.5, 0.0}, {0.5, 0.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(checker::verdict(table));
    }
}
BENCHMARK(BM_ClassicalVerdict);

void BM_ClassicalCorrelationMc(benchmark::State& state) {
    const bell::Vec3 a{1.0, 0.0, 0.0};
    const bell::Vec3 b{0.0, 1.0, 0.0};
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bell::classical_correlation_mc(a, b, n, 7));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ClassicalCorrelationMc)->Arg(1 << 12)->Arg(1 << 16);

} // namespace

BENCHMARK_MAIN();
