#include "piqfc/state.hpp"

#include <cmath>
#include <numbers>

namespace piqfc {

PolarizationKet::PolarizationKet(const Vector2c& amplitudes) : amps_(amplitudes) {
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > 1e-12)
        throw ValidationError("PolarizationKet: norm " + std::to_string(norm) + " != 1");
}

PolarizationKet PolarizationKet::horizontal() { return PolarizationKet(Vector2c(1.0, 0.0)); }
PolarizationKet PolarizationKet::vertical() { return PolarizationKet(Vector2c(0.0, 1.0)); }

TwoQubitState::TwoQubitState(const Matrix4c& rho) : rho_(rho) {
    if (!rho_.allFinite()) throw ValidationError("TwoQubitState: non-finite entries");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw NotHermitian("TwoQubitState");
    if (std::abs(rho_.trace().real() - 1.0) > kTraceTol || std::abs(rho_.trace().imag()) > kTraceTol)
        throw ValidationError("TwoQubitState: trace != 1");
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(rho_);
    if (solver.eigenvalues().minCoeff() < -kEigTol)
        throw NotPSD("TwoQubitState: eigenvalue " + std::to_string(solver.eigenvalues().minCoeff()));
}

TwoQubitState TwoQubitState::from_ket(const Vector4c& psi) {
    const double n = psi.norm();
    if (n < 1e-14) throw ValidationError("from_ket: zero vector");
    const Vector4c u = psi / n;
    return TwoQubitState(u * u.adjoint());
}

TwoQubitState TwoQubitState::maximally_mixed() {
    return TwoQubitState(Matrix4c::Identity() * 0.25);
}

TwoQubitState normalize_to_state(const ComplexMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) throw ValidationError("normalize_to_state: need 4x4");
    if (!is_hermitian(m, 1e-8)) throw NotHermitian("normalize_to_state");
    const double tr = m.trace().real();
    if (tr <= 1e-14) throw ZeroTrace("normalize_to_state: trace " + std::to_string(tr));

    // Symmetrize roundoff away, then clip slightly negative eigenvalues.
    const Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h);
    Matrix4c rebuilt = Matrix4c::Zero();
    for (int k = 0; k < 4; ++k) {
        const double lam = std::max(0.0, solver.eigenvalues()(k));
        const Vector4c v = solver.eigenvectors().col(k);
        rebuilt += lam * (v * v.adjoint());
    }
    const double tr2 = rebuilt.trace().real();
    if (tr2 <= 1e-14) throw ZeroTrace("normalize_to_state: trace vanished after clipping");
    return TwoQubitState(rebuilt / tr2);
}

Vector4c phi_plus() {
    Vector4c v = Vector4c::Zero();
    v(0) = 1.0 / std::numbers::sqrt2;
    v(3) = 1.0 / std::numbers::sqrt2;
    return v;
}

Matrix4c u_theta(double theta) {
    Matrix2c uz = Matrix2c::Zero();
    uz(0, 0) = std::polar(1.0, -theta / 2.0);
    uz(1, 1) = std::polar(1.0, theta / 2.0);
    return kron(uz, identity2());
}

double trace_distance(const TwoQubitState& a, const TwoQubitState& b) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(a.rho() - b.rho());
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double fidelity_to_ket(const TwoQubitState& state, const Vector4c& psi) {
    return (psi.adjoint() * state.rho() * psi)(0).real();
}

} // namespace piqfc
