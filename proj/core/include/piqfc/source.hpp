#ifndef PIQFC_SOURCE_HPP
#define PIQFC_SOURCE_HPP

#include "piqfc/state.hpp"

namespace piqfc {

/// Atom-photon pair source: path amplitudes alpha, beta with dephasing and
/// white-noise admixture applied at the pair level.
struct SourceConfig {
    Complex alpha{1.0 / std::numbers::sqrt2, 0.0};
    Complex beta{1.0 / std::numbers::sqrt2, 0.0};
    double dephasing = 0.0;   // in [0, 1], damps the path coherence
    double white_noise = 0.0; // in [0, 1], I/4 admixture weight
    double read_phase = 0.0;  // radians, acquired between write and read

    void validate() const;
};

/// Informational only; carried into reports.
struct ScenarioMetadata {
    double detuning_mhz = 10.0;
    double write_pulse_ns = 70.0;
    double read_pulse_ns = 100.0;
    double init_pulse_ns = 200.0;
    int repetitions_per_cycle = 990;
};

/// The write-stage two-qubit state: qubit 1 the atomic rail (k+, k-),
/// qubit 2 the AS polarization with H <-> path+, V <-> path-.
TwoQubitState atom_photon_state(const SourceConfig& cfg);

/// Read-out maps the atomic rail to Stokes polarization. balance = 1/2 is a
/// pure relabeling; otherwise the former atomic qubit is filtered by
/// diag(sqrt(w), sqrt(1-w)) and the state renormalized.
/// Throws ZeroSuccess when the filter annihilates the state.
TwoQubitState read_out(const TwoQubitState& state, double readout_balance);

/// p U_theta |phi+><phi+| U_theta^dag + (1-p) I/4.
TwoQubitState werner_state(double p, double theta);

} // namespace piqfc

#endif
