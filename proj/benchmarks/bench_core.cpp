#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "biphoton/correlate.hpp"
#include "biphoton/entangle.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/sampler.hpp"

using namespace biphoton;

namespace {
constexpr double kPi = std::numbers::pi;
const double kR = 1.0 / std::sqrt(2.0);
} // namespace

static void BM_BuildRtoState(benchmark::State& state) {
    double delta = 0.0;
    for (auto _ : state) {
        auto v = build_rto_state({.phi_a = 0.0, .phi_b = delta});
        benchmark::DoNotOptimize(v);
        delta += 0.01;
    }
}
BENCHMARK(BM_BuildRtoState);

static void BM_JointProbsFromState(benchmark::State& state) {
    double delta = 0.0;
    for (auto _ : state) {
        auto jd = joint_probs_from_state({.phi_a = 0.0, .phi_b = delta});
        benchmark::DoNotOptimize(jd);
        delta += 0.01;
    }
}
BENCHMARK(BM_JointProbsFromState);

static void BM_PartialTrace(benchmark::State& state) {
    const auto pair = StateVector::entangled_pair_state();
    for (auto _ : state) {
        auto rho = partial_trace(pair, "A");
        benchmark::DoNotOptimize(rho);
    }
}
BENCHMARK(BM_PartialTrace);

static void BM_CoherenceLedger(benchmark::State& state) {
    const auto sys = StateVector::two_path_state("A", {kR, 0.0}, {kR, 0.0});
    const auto joint = premeasure(sys, {Complex{0.0, 0.0}});
    const auto sweep = correlation_phase_sweep(joint, 24);
    for (auto _ : state) {
        auto led = coherence_ledger(joint, sweep);
        benchmark::DoNotOptimize(led);
    }
}
BENCHMARK(BM_CoherenceLedger);

static void BM_SampleOutcomes(benchmark::State& state) {
    const auto jd = joint_probs_analytic(kPi / 3.0, 0.0);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto counts = sample_outcomes(jd, n, {seed++});
        benchmark::DoNotOptimize(counts);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SampleOutcomes)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

static void BM_ChshRandomSettings(benchmark::State& state) {
    SplitMix64 rng(7);
    for (auto _ : state) {
        const ChshSetting s{2.0 * kPi * rng.next_double(), 2.0 * kPi * rng.next_double(),
                            2.0 * kPi * rng.next_double(), 2.0 * kPi * rng.next_double()};
        benchmark::DoNotOptimize(chsh_value(s));
    }
}
BENCHMARK(BM_ChshRandomSettings);

static void BM_MziProbabilities(benchmark::State& state) {
    double phi = 0.0;
    for (auto _ : state) {
        auto p = mzi_probabilities({.phi1 = phi, .phi2 = 0.0});
        benchmark::DoNotOptimize(p);
        phi += 0.01;
    }
}
BENCHMARK(BM_MziProbabilities);

BENCHMARK_MAIN();
