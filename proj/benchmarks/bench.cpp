#include <benchmark/benchmark.h>

#include <vector>

#include "rt/distributions.hpp"
#include "rt/null_test.hpp"
#include "rt/select.hpp"
#include "rt/simulate.hpp"

namespace {

std::vector<double> planted(std::size_t n) {
    auto y = rt::sample(rt::NullModel::standard_gaussian(), n, 1);
    const auto sig = rt::sample(rt::SignalLaw::gaussian(5.0, 1.0), n / 5, 2);
    std::copy(sig.begin(), sig.end(), y.begin());
    return y;
}

void bm_transform(benchmark::State& state) {
    const auto y = planted(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            rt::transform(y, rt::NullModel::standard_gaussian()));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_transform)->Range(1 << 10, 1 << 16)->Complexity();

void bm_null_test(benchmark::State& state) {
    const auto y = planted(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            rt::null_test(y, rt::NullModel::standard_gaussian(), 0.05));
}
BENCHMARK(bm_null_test)->Range(1 << 10, 1 << 16);

void bm_fixed_window(benchmark::State& state) {
    const std::size_t n = state.range(0);
    const auto y = planted(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            rt::select_fixed_window(y, rt::NullModel::standard_gaussian(), n / 2));
}
BENCHMARK(bm_fixed_window)->Range(1 << 9, 1 << 13);

void bm_varying_window(benchmark::State& state) {
    const std::size_t n = state.range(0);
    const auto y = planted(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(rt::select_varying_window(
            y, rt::NullModel::standard_gaussian(), n / 2));
}
BENCHMARK(bm_varying_window)->Range(1 << 9, 1 << 13);

void bm_unknown_theta(benchmark::State& state) {
    const std::size_t n = state.range(0);
    const auto y = planted(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(rt::select_unknown_theta(
            y, rt::NullModel::gaussian_unknown_variance(),
            rt::WindowMode::fixed(n / 2)));
}
BENCHMARK(bm_unknown_theta)->Range(1 << 9, 1 << 12);

void bm_calibrate(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(rt::calibrate(state.range(0), 0.05, 1000, 7));
}
BENCHMARK(bm_calibrate)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
