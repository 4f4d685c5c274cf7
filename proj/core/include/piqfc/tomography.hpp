#ifndef PIQFC_TOMOGRAPHY_HPP
#define PIQFC_TOMOGRAPHY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "piqfc/measurement.hpp"
#include "piqfc/state.hpp"

namespace piqfc {

struct MleOptions {
    int max_iterations = 5000;
    double convergence_tol = 1e-10; // relative log-likelihood change
    double dilution = 1.0;          // in (0, 1]; 1 = undiluted RrhoR

    void validate() const;
};

struct ReconstructionResult {
    TwoQubitState rho = TwoQubitState::maximally_mixed();
    double log_likelihood = 0.0;
    int iterations_used = 0;
    bool converged = false;
};

/// Iterative maximum-likelihood reconstruction (RrhoR fixed point, adapted
/// to single-port counting: probabilities renormalized over the full record
/// set). Starts from I/4. Log-likelihood is nondecreasing over accepted
/// iterates. Throws NotInformationallyComplete or AllZeroCounts.
ReconstructionResult mle_reconstruct(const std::vector<CountRecord>& records,
                                     const MleOptions& opts);

struct BootstrapStat {
    double mean = 0.0;
    double stddev = 0.0;
};

struct BootstrapResult {
    std::map<std::string, BootstrapStat> stats;
    int resamples_requested = 0;
    int resamples_failed = 0;
    double failure_fraction = 0.0;
};

using MetricFn = std::function<double(const TwoQubitState&)>;

/// Poisson-resamples the observed counts, reconstructs each resample and
/// evaluates the given metrics. Resample i uses seed hash64(seed, i).
/// Failed resamples are dropped and counted.
BootstrapResult bootstrap_metrics(const std::vector<CountRecord>& records, const MleOptions& opts,
                                  int resamples, std::uint64_t seed,
                                  const std::map<std::string, MetricFn>& metric_set);

} // namespace piqfc

#endif
