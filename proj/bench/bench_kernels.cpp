// Serial reference vs OpenMP kernels. Arg 0 selects Exec::Serial (0) or Exec::Parallel (1).

#include "bratteli/diagram.hpp"
#include "bratteli/extension.hpp"
#include "bratteli/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace bratteli;

namespace {

kernels::Exec exec_of(const benchmark::State& s) {
    return s.range(0) == 0 ? kernels::Exec::Serial : kernels::Exec::Parallel;
}

void BM_Multiply(benchmark::State& state) {
    const std::size_t width = static_cast<std::size_t>(state.range(1));
    auto spec = DiagramSpec::stationary_decreasing(parse_sequence_shorthand("table:9,7,5|constant:3"), {4, width + 1});
    LevelMatrix f = incidence(spec, 0, spec.window());
    std::vector<BigInt> x(f.cols());
    for (std::size_t w = 0; w < x.size(); ++w) x[w] = BigInt(static_cast<unsigned long>(w + 1)) * 1000003;
    for (auto _ : state) {
        auto y = kernels::multiply<BigInt>(f, x, f.complete_rows(), exec_of(state));
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.entries().size()));
}

void BM_MultiplyTransposed(benchmark::State& state) {
    const std::size_t width = static_cast<std::size_t>(state.range(1));
    auto spec = DiagramSpec::stationary_ak(5, 2, {4, width + 1});
    LevelMatrix f = incidence(spec, 0, spec.window());
    std::vector<Rational> p(f.rows());
    for (std::size_t v = 0; v < p.size(); ++v) p[v] = make_rational(BigInt(1), BigInt(static_cast<unsigned long>(v + 2)));
    for (auto _ : state) {
        auto q = kernels::multiply_transposed<Rational>(f, p, f.complete_cols(), exec_of(state));
        benchmark::DoNotOptimize(q.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.entries().size()));
}

void BM_Heights(benchmark::State& state) {
    const std::size_t levels = static_cast<std::size_t>(state.range(1));
    auto spec = DiagramSpec::stationary_increasing({levels, 4 * levels});
    for (auto _ : state) {
        auto h = heights(spec, levels, spec.window(), exec_of(state));
        benchmark::DoNotOptimize(h.values.data());
    }
}

void BM_Classify(benchmark::State& state) {
    const std::size_t i_max = static_cast<std::size_t>(state.range(1));
    auto spec = DiagramSpec::stationary_decreasing(parse_sequence_shorthand("table:7,4,3|constant:2"));
    for (auto _ : state) {
        auto rep = classify_ergodic_measures(spec, i_max, {}, exec_of(state));
        benchmark::DoNotOptimize(rep.entries.data());
    }
}

}  // namespace

BENCHMARK(BM_Multiply)->ArgsProduct({{0, 1}, {1 << 10, 1 << 14}});
BENCHMARK(BM_MultiplyTransposed)->ArgsProduct({{0, 1}, {1 << 10, 1 << 14}});
BENCHMARK(BM_Heights)->ArgsProduct({{0, 1}, {64, 256}});
BENCHMARK(BM_Classify)->ArgsProduct({{0, 1}, {8, 32}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
