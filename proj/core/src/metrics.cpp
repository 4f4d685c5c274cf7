#include "piqfc/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace piqfc {

namespace {

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

} // namespace

double concurrence(const TwoQubitState& state) {
    const Matrix4c yy = kron(pauli_y(), pauli_y());
    const Matrix4c rho = state.rho();
    const Matrix4c m = rho * yy * rho.conjugate() * yy;

    // m is similar to a PSD product; its eigenvalues are real nonnegative
    // up to roundoff.
    Eigen::ComplexEigenSolver<Matrix4c> solver(m);
    std::array<double, 4> lambdas{};
    for (int k = 0; k < 4; ++k)
        lambdas[static_cast<std::size_t>(k)] =
            std::sqrt(std::max(0.0, solver.eigenvalues()(k).real()));
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

double eof(const TwoQubitState& state) {
    const double c = concurrence(state);
    if (c >= 1.0) return 1.0;
    const double x = (1.0 + std::sqrt(1.0 - c * c)) / 2.0;
    return binary_entropy(x);
}

double purity(const TwoQubitState& state) {
    return (state.rho() * state.rho()).trace().real();
}

MaxFidelity max_fidelity(const TwoQubitState& state) {
    const Complex coherence = state(0, 3); // <HH| rho |VV>
    MaxFidelity out;
    out.fidelity = 0.5 * (state(0, 0).real() + state(3, 3).real()) + std::abs(coherence);
    out.theta_star = (std::abs(coherence) > 0.0) ? -std::arg(coherence) : 0.0;
    if (out.theta_star <= -std::numbers::pi) out.theta_star += 2.0 * std::numbers::pi;
    return out;
}

MetricsReport compute_metrics(const TwoQubitState& state) {
    MetricsReport report;
    report.concurrence = concurrence(state);
    report.eof = eof(state);
    report.purity = purity(state);
    const auto mf = max_fidelity(state);
    report.max_fidelity = mf.fidelity;
    report.theta_star_deg = mf.theta_star * 180.0 / std::numbers::pi;
    return report;
}

std::map<std::string, MetricFn> standard_metric_set() {
    return {
        {"concurrence", [](const TwoQubitState& s) { return concurrence(s); }},
        {"eof", [](const TwoQubitState& s) { return eof(s); }},
        {"purity", [](const TwoQubitState& s) { return purity(s); }},
        {"max_fidelity", [](const TwoQubitState& s) { return max_fidelity(s).fidelity; }},
        {"theta_star_deg",
         [](const TwoQubitState& s) { return max_fidelity(s).theta_star * 180.0 / std::numbers::pi; }},
    };
}

} // namespace piqfc
