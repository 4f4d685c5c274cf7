#ifndef PIQFC_METRICS_HPP
#define PIQFC_METRICS_HPP

#include <map>
#include <string>

#include "piqfc/state.hpp"
#include "piqfc/tomography.hpp"

namespace piqfc {

struct MetricsReport {
    double concurrence = 0.0;
    double eof = 0.0;
    double purity = 0.25;
    double max_fidelity = 0.0;
    double theta_star_deg = 0.0; // in (-180, 180]
};

/// Wootters concurrence: max(0, l1 - l2 - l3 - l4) with l_i the descending
/// square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
double concurrence(const TwoQubitState& state);

/// Entanglement of formation, h((1 + sqrt(1 - C^2))/2) with the binary
/// entropy h (h(0) = h(1) = 0).
double eof(const TwoQubitState& state);

double purity(const TwoQubitState& state);

struct MaxFidelity {
    double fidelity = 0.0;
    double theta_star = 0.0; // radians, in (-pi, pi]
};

/// max over theta of <phi+| U_theta^dag rho U_theta |phi+>, closed form
/// F = (rho_00 + rho_33)/2 + |rho_03|, theta* = -arg(rho_03)
/// (0 by convention when rho_03 = 0).
MaxFidelity max_fidelity(const TwoQubitState& state);

MetricsReport compute_metrics(const TwoQubitState& state);

/// The metric set evaluated under bootstrap, keyed by report field name.
std::map<std::string, MetricFn> standard_metric_set();

} // namespace piqfc

#endif
