#include "piqfc/source.hpp"

#include <cmath>
#include <numbers>

namespace piqfc {

void SourceConfig::validate() const {
    const double norm2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw ValidationError("SourceConfig: |alpha|^2 + |beta|^2 = " + std::to_string(norm2) +
                              " != 1");
    if (dephasing < 0.0 || dephasing > 1.0)
        throw ValidationError("SourceConfig: dephasing must be in [0, 1]");
    if (white_noise < 0.0 || white_noise > 1.0)
        throw ValidationError("SourceConfig: white_noise must be in [0, 1]");
    if (!std::isfinite(read_phase)) throw ValidationError("SourceConfig: non-finite read_phase");
}

TwoQubitState atom_photon_state(const SourceConfig& cfg) {
    cfg.validate();

    // Ideal pure state alpha |k+, H> + beta e^{i phi} |k-, V> in the
    // (atom, AS) = (first, second) factor ordering; k+ maps to index 0.
    Vector4c psi = Vector4c::Zero();
    psi(0) = cfg.alpha;
    psi(3) = cfg.beta * std::polar(1.0, cfg.read_phase);
    Matrix4c rho = psi * psi.adjoint();

    // Dephasing damps the coherence between the two path branches.
    const double damp = 1.0 - cfg.dephasing;
    rho(0, 3) *= damp;
    rho(3, 0) *= damp;

    rho = (1.0 - cfg.white_noise) * rho + cfg.white_noise * 0.25 * Matrix4c::Identity();
    return TwoQubitState(rho);
}

TwoQubitState read_out(const TwoQubitState& state, double readout_balance) {
    if (readout_balance < 0.0 || readout_balance > 1.0)
        throw ValidationError("read_out: balance must be in [0, 1]");

    // The rail relabeling (k+, k-) -> (H, V) is the identity on the matrix;
    // only an unbalanced read applies a filter.
    if (readout_balance == 0.5) return state;

    Matrix2c f = Matrix2c::Zero();
    f(0, 0) = std::sqrt(readout_balance);
    f(1, 1) = std::sqrt(1.0 - readout_balance);
    const Matrix4c op = kron(f, identity2());
    const Matrix4c filtered = op * state.rho() * op.adjoint();
    const double tr = filtered.trace().real();
    if (tr <= 1e-14) throw ZeroSuccess("read_out: filtered trace " + std::to_string(tr));
    return TwoQubitState(filtered / tr);
}

TwoQubitState werner_state(double p, double theta) {
    if (p < 0.0 || p > 1.0) throw ValidationError("werner_state: p must be in [0, 1]");
    const Vector4c psi = u_theta(theta) * phi_plus();
    const Matrix4c rho = p * (psi * psi.adjoint()) + (1.0 - p) * 0.25 * Matrix4c::Identity();
    return TwoQubitState(rho);
}

} // namespace piqfc
