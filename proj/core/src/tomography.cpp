#include "piqfc/tomography.hpp"

#include <cmath>

#include "piqfc/rng.hpp"

namespace piqfc {

void MleOptions::validate() const {
    if (max_iterations <= 0) throw ValidationError("MleOptions: max_iterations must be > 0");
    if (!(convergence_tol > 0.0)) throw ValidationError("MleOptions: convergence_tol must be > 0");
    if (!(dilution > 0.0) || dilution > 1.0)
        throw ValidationError("MleOptions: dilution must be in (0, 1]");
}

namespace {

struct MleProblem {
    std::vector<Matrix4c> projectors;
    std::vector<double> weights;
    std::vector<double> counts;
    double total_counts = 0.0;
    Matrix4c g = Matrix4c::Zero();       // sum of weighted projectors
    Matrix4c g_inv = Matrix4c::Zero();
};

MleProblem setup_problem(const std::vector<CountRecord>& records) {
    if (records.empty()) throw ValidationError("mle_reconstruct: no records");

    SettingsPlan plan;
    plan.name = PlanName::Custom;
    for (const auto& rec : records) plan.settings.push_back(rec.setting);
    if (!is_informationally_complete(plan))
        throw NotInformationallyComplete("mle_reconstruct: projector span rank " +
                                         std::to_string(completeness_rank(plan)));

    MleProblem prob;
    for (const auto& rec : records) {
        prob.projectors.push_back(setting_projector(rec.setting));
        prob.weights.push_back(rec.acquisition_weight);
        prob.counts.push_back(static_cast<double>(rec.count));
        prob.total_counts += static_cast<double>(rec.count);
        prob.g += rec.acquisition_weight * prob.projectors.back();
    }
    if (prob.total_counts <= 0.0) throw AllZeroCounts("mle_reconstruct: all counts are zero");

    // Informational completeness makes G positive definite.
    prob.g_inv = prob.g.inverse();
    return prob;
}

double log_likelihood(const MleProblem& prob, const Matrix4c& rho) {
    double q_sum = 0.0;
    std::vector<double> q(prob.projectors.size());
    for (std::size_t j = 0; j < prob.projectors.size(); ++j) {
        q[j] = std::max(prob.weights[j] * (rho * prob.projectors[j]).trace().real(), 1e-300);
        q_sum += q[j];
    }
    double ll = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j)
        if (prob.counts[j] > 0.0) ll += prob.counts[j] * std::log(q[j] / q_sum);
    return ll;
}

// The likelihood-gradient operator: R = (Q/N) sum_j (n_j / q_j) w_j Pi_j.
Matrix4c r_operator(const MleProblem& prob, const Matrix4c& rho) {
    std::vector<double> q(prob.projectors.size());
    double q_sum = 0.0;
    for (std::size_t j = 0; j < prob.projectors.size(); ++j) {
        q[j] = std::max(prob.weights[j] * (rho * prob.projectors[j]).trace().real(), 1e-300);
        q_sum += q[j];
    }
    Matrix4c r = Matrix4c::Zero();
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (prob.counts[j] <= 0.0) continue;
        r += (prob.counts[j] / q[j]) * prob.weights[j] * prob.projectors[j];
    }
    return (q_sum / prob.total_counts) * r;
}

} // namespace

ReconstructionResult mle_reconstruct(const std::vector<CountRecord>& records,
                                     const MleOptions& opts) {
    opts.validate();
    const MleProblem prob = setup_problem(records);

    ReconstructionResult result;
    Matrix4c rho = Matrix4c::Identity() * 0.25;
    double ll = log_likelihood(prob, rho);

    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        const Matrix4c r = r_operator(prob, rho);

        // G-corrected RrhoR step, optionally diluted toward the identity.
        // A step that would lower the likelihood is retried at smaller
        // dilution before giving up.
        double d = opts.dilution;
        bool accepted = false;
        double ll_new = ll;
        Matrix4c rho_new = rho;
        for (int backoff = 0; backoff < 30; ++backoff) {
            const Matrix4c m =
                (1.0 - d) * Matrix4c::Identity() + d * Matrix4c(prob.g_inv * r);
            Matrix4c cand = m * rho * m.adjoint();
            cand = 0.5 * (cand + cand.adjoint());
            cand /= cand.trace().real();
            const double cand_ll = log_likelihood(prob, cand);
            if (cand_ll + 1e-9 >= ll) {
                rho_new = cand;
                ll_new = cand_ll;
                accepted = true;
                break;
            }
            d *= 0.5;
        }
        result.iterations_used = iter;
        if (!accepted) break;

        const double rel_change = std::abs(ll_new - ll) / std::max(1.0, std::abs(ll_new));
        rho = rho_new;
        ll = ll_new;
        if (rel_change < opts.convergence_tol) {
            result.converged = true;
            break;
        }
    }

    result.rho = normalize_to_state(rho);
    result.log_likelihood = ll;
    return result;
}

BootstrapResult bootstrap_metrics(const std::vector<CountRecord>& records, const MleOptions& opts,
                                  int resamples, std::uint64_t seed,
                                  const std::map<std::string, MetricFn>& metric_set) {
    if (resamples < 10) throw ValidationError("bootstrap_metrics: resamples must be >= 10");

    std::map<std::string, std::vector<double>> samples;
    BootstrapResult result;
    result.resamples_requested = resamples;

    for (int i = 0; i < resamples; ++i) {
        Rng rng(hash64(seed, static_cast<std::uint64_t>(i)));
        std::vector<CountRecord> resampled = records;
        for (auto& rec : resampled) rec.count = rng.poisson(static_cast<double>(rec.count));
        try {
            const auto recon = mle_reconstruct(resampled, opts);
            for (const auto& [name, fn] : metric_set) samples[name].push_back(fn(recon.rho));
        } catch (const ComputationError&) {
            ++result.resamples_failed;
        } catch (const ValidationError&) {
            ++result.resamples_failed;
        }
    }
    result.failure_fraction =
        static_cast<double>(result.resamples_failed) / static_cast<double>(resamples);
    if (result.resamples_failed == resamples)
        throw ComputationError("bootstrap_metrics: every resample failed");

    for (const auto& [name, vals] : samples) {
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        double var = 0.0;
        for (double v : vals) var += (v - mean) * (v - mean);
        if (vals.size() > 1) var /= static_cast<double>(vals.size() - 1);
        result.stats[name] = BootstrapStat{mean, std::sqrt(var)};
    }
    return result;
}

} // namespace piqfc
