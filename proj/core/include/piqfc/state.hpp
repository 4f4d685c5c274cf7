#ifndef PIQFC_STATE_HPP
#define PIQFC_STATE_HPP

#include "piqfc/linalg.hpp"

namespace piqfc {

// Basis ordering used everywhere in this library:
// two-qubit basis (HH, HV, VH, VV), first factor = Stokes arm (atomic rail
// before read-out), second factor = anti-Stokes / telecom arm.

/// Normalized single-photon polarization state over (H, V).
class PolarizationKet {
public:
    explicit PolarizationKet(const Vector2c& amplitudes);

    const Vector2c& amplitudes() const { return amps_; }
    Complex h() const { return amps_(0); }
    Complex v() const { return amps_(1); }

    Matrix2c projector() const { return amps_ * amps_.adjoint(); }

    static PolarizationKet horizontal();
    static PolarizationKet vertical();

private:
    Vector2c amps_;
};

/// 4x4 density operator over (HH, HV, VH, VV). Construction validates
/// Hermiticity, unit trace and positivity at the tolerances below.
class TwoQubitState {
public:
    static constexpr double kHermTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kEigTol = 1e-10;

    /// Validates all invariants; throws NotHermitian / ZeroTrace / NotPSD.
    explicit TwoQubitState(const Matrix4c& rho);

    const Matrix4c& rho() const { return rho_; }
    Complex operator()(int i, int j) const { return rho_(i, j); }

    static TwoQubitState from_ket(const Vector4c& psi);
    static TwoQubitState maximally_mixed();

private:
    Matrix4c rho_;
};

/// Scales a Hermitian positive-trace matrix to unit trace, clipping
/// eigenvalues below -1e-10 to zero. Throws ZeroTrace if tr(m) <= 1e-14.
TwoQubitState normalize_to_state(const ComplexMatrix& m);

/// The Bell state (|HH> + |VV>)/sqrt(2).
Vector4c phi_plus();

/// exp(-i theta Z/2) (x) I, the phase rotation on the first (S) factor.
Matrix4c u_theta(double theta);

double trace_distance(const TwoQubitState& a, const TwoQubitState& b);

double fidelity_to_ket(const TwoQubitState& state, const Vector4c& psi);

} // namespace piqfc

#endif
