#include "piqfc/pipeline.hpp"

#include "piqfc/rng.hpp"

namespace piqfc {

SimulationResult simulate_scenario(const ScenarioConfig& scenario, std::uint64_t seed) {
    TwoQubitState state = scenario.source.make_state();
    SimulationResult result;

    double mean = scenario.mean_pairs_per_setting;
    if (scenario.qfc) {
        auto [converted, success] = apply_qfc_postselected(state, *scenario.qfc, scenario.qfc_arm);
        state = converted;
        // Postselection success rescales the flux; the state itself is the
        // conditioned one.
        mean *= success;
        result.qfc_success_prob = success;
    }

    result.records = simulate_counts(state, standard_plan(scenario.plan), mean, seed);
    for (const auto& rec : result.records) result.total_counts += rec.count;
    return result;
}

ArmResult analyze_records(const std::vector<CountRecord>& records, const ScenarioConfig& scenario,
                          std::uint64_t seed, const std::string& arm_name) {
    ArmResult arm;
    arm.name = arm_name;
    arm.plan = scenario.plan;
    for (const auto& rec : records) arm.total_counts += rec.count;

    arm.reconstruction = mle_reconstruct(records, scenario.mle);
    arm.metrics = compute_metrics(arm.reconstruction.rho);
    arm.bootstrap = bootstrap_metrics(records, scenario.mle, scenario.bootstrap_resamples, seed,
                                      standard_metric_set());
    return arm;
}

std::vector<ArmResult> run_pipeline(const PipelineConfig& config) {
    std::vector<ArmResult> arms;
    if (!config.paired) {
        SimulationResult sim = simulate_scenario(config.base, config.seed);
        ArmResult arm = analyze_records(sim.records, config.base, config.seed, "single");
        arm.qfc_success_prob = sim.qfc_success_prob;
        arms.push_back(std::move(arm));
        return arms;
    }

    struct ArmPlan {
        const ScenarioConfig* scenario;
        const char* name;
        std::uint64_t sim_seed;
        std::uint64_t analysis_seed;
    };
    const ArmPlan plans[2] = {
        {&config.no_qfc, "no_qfc", hash64(config.seed, 101), hash64(config.seed, 102)},
        {&config.with_qfc, "with_qfc", hash64(config.seed, 201), hash64(config.seed, 202)},
    };
    for (const auto& p : plans) {
        SimulationResult sim = simulate_scenario(*p.scenario, p.sim_seed);
        ArmResult arm = analyze_records(sim.records, *p.scenario, p.analysis_seed, p.name);
        arm.qfc_success_prob = sim.qfc_success_prob;
        arms.push_back(std::move(arm));
    }
    return arms;
}

} // namespace piqfc
