#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "su11/detection.hpp"
#include "su11/fock_oracle.hpp"
#include "su11/qfi.hpp"

using namespace su11;

static void BM_BesselI(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::bessel_i(order, 2.7));
    }
}
BENCHMARK(BM_BesselI)->Arg(0)->Arg(4)->Arg(16);

static void BM_PcsAmplitudes(benchmark::State& state) {
    const auto spec = StateSpec::perelomov(1.0, 1.0);
    const int cutoff = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcs_amplitudes(spec, cutoff));
    }
}
BENCHMARK(BM_PcsAmplitudes)->Arg(64)->Arg(256);

static void BM_BeamSplitterBuild(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    for (auto _ : state) {
        oracle::BeamSplitterUnitary bs(cutoff, 1.0 / std::numbers::sqrt2);
        benchmark::DoNotOptimize(&bs);
    }
    state.SetComplexityN(cutoff);
}
BENCHMARK(BM_BeamSplitterBuild)->RangeMultiplier(2)->Range(16, 128)->Complexity();

static void BM_BeamSplitterApply(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    const auto spec = StateSpec::perelomov(1.0, 1.0);
    const auto input = oracle::build_input(spec, cutoff);
    const oracle::BeamSplitterUnitary bs(cutoff, 1.0 / std::numbers::sqrt2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bs.apply(input));
    }
    state.SetComplexityN(cutoff);
}
BENCHMARK(BM_BeamSplitterApply)->RangeMultiplier(2)->Range(32, 128)->Complexity();

static void BM_GeneratorCovariance(benchmark::State& state) {
    const auto spec = StateSpec::perelomov(1.0, 1.0);
    const int cutoff = auto_cutoff(spec) + 2;
    const auto post =
        oracle::apply_beam_splitter(oracle::build_input(spec, cutoff), 1.0 / std::numbers::sqrt2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::generator_covariance(post));
    }
}
BENCHMARK(BM_GeneratorCovariance);

static void BM_NumericSensitivity(benchmark::State& state) {
    const auto spec = StateSpec::perelomov(1.0, 1.0);
    const double rb = 1.0 / std::numbers::sqrt2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::numeric_sensitivity(
            spec, {rb, rb}, {oracle::ObservableKind::IntensityDifference},
            qfi::Scenario::Asymmetric, 1.2));
    }
}
BENCHMARK(BM_NumericSensitivity);

static void BM_SensitivityDif(benchmark::State& state) {
    const auto spec = StateSpec::perelomov(1.0, 1.0);
    const double rb = 1.0 / std::numbers::sqrt2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(detection::sensitivity_dif(spec, rb, rb, 1.2));
    }
}
BENCHMARK(BM_SensitivityDif);

static void BM_HomodyneSeries(benchmark::State& state) {
    const auto spec = StateSpec::barut_girardello(1.5, 1.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(detection::homodyne_series(spec));
    }
}
BENCHMARK(BM_HomodyneSeries);

BENCHMARK_MAIN();
