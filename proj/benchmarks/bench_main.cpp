#include <benchmark/benchmark.h>

#include <piqfc/metrics.hpp>
#include <piqfc/qfc.hpp>
#include <piqfc/source.hpp>
#include <piqfc/tomography.hpp>

using namespace piqfc;

static void BM_ModeTransform(benchmark::State& state) {
    QfcConfig cfg;
    cfg.theta_h = 0.6;
    cfg.theta_v = 0.6;
    cfg.phi_h = 1.2;
    cfg.validate();
    for (auto _ : state) benchmark::DoNotOptimize(mode_transform(cfg));
}
BENCHMARK(BM_ModeTransform);

static void BM_ApplyQfc(benchmark::State& state) {
    QfcConfig cfg;
    cfg.theta_h = 0.6;
    cfg.theta_v = 0.6;
    cfg.phi_h = 1.2;
    cfg.validate();
    const TwoQubitState input = werner_state(0.7, -0.4);
    for (auto _ : state) benchmark::DoNotOptimize(apply_qfc_postselected(input, cfg, Arm::AS));
}
BENCHMARK(BM_ApplyQfc);

static void BM_Concurrence(benchmark::State& state) {
    const TwoQubitState w = werner_state(0.7, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(concurrence(w));
}
BENCHMARK(BM_Concurrence);

static void BM_ComputeMetrics(benchmark::State& state) {
    const TwoQubitState w = werner_state(0.7, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(compute_metrics(w));
}
BENCHMARK(BM_ComputeMetrics);

static void BM_SimulateCounts(benchmark::State& state) {
    const TwoQubitState w = werner_state(0.7, 0.3);
    const auto plan = standard_plan(PlanName::Standard36);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_counts(w, plan, 500.0, 42));
}
BENCHMARK(BM_SimulateCounts);

static void BM_MleReconstruct(benchmark::State& state) {
    const TwoQubitState w = werner_state(0.7, 0.3);
    const auto records =
        simulate_counts(w, standard_plan(PlanName::Standard36), static_cast<double>(state.range(0)),
                        42);
    for (auto _ : state) benchmark::DoNotOptimize(mle_reconstruct(records, MleOptions{}));
}
BENCHMARK(BM_MleReconstruct)->Arg(500)->Arg(100000);
