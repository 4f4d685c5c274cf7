#ifndef PIQFC_PIPELINE_HPP
#define PIQFC_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "piqfc/config.hpp"
#include "piqfc/metrics.hpp"

namespace piqfc {

struct SimulationResult {
    std::vector<CountRecord> records;
    std::optional<double> qfc_success_prob;
    std::uint64_t total_counts = 0;
};

struct ArmResult {
    std::string name; // "single", "no_qfc" or "with_qfc"
    PlanName plan = PlanName::Standard36;
    std::uint64_t total_counts = 0;
    std::optional<double> qfc_success_prob;
    ReconstructionResult reconstruction;
    MetricsReport metrics;
    BootstrapResult bootstrap;
};

/// Source (+ optional QFC) -> Poissonian counts. The QFC success probability
/// multiplies the per-setting mean.
SimulationResult simulate_scenario(const ScenarioConfig& scenario, std::uint64_t seed);

/// MLE + metrics + bootstrap over one set of count records. Bootstrap seeds
/// derive from hash64(seed, 1 + resample index).
ArmResult analyze_records(const std::vector<CountRecord>& records, const ScenarioConfig& scenario,
                          std::uint64_t seed, const std::string& arm_name);

/// Full simulate + analyze for every arm the config defines.
std::vector<ArmResult> run_pipeline(const PipelineConfig& config);

} // namespace piqfc

#endif
