#include "piqfc/linalg.hpp"

#include <algorithm>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

namespace piqfc {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& m, double herm_tol) {
    if (m.rows() != m.cols()) throw NotHermitian("matrix is not square");
    if (!is_hermitian(m, herm_tol)) throw NotHermitian("symmetry check failed");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) throw ComputationError("eigensolver failed");

    const auto n = m.rows();
    // Eigen returns ascending order; flip to descending.
    Eigensystem out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
        out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
    auto es = hermitian_eigensystem(m);
    const double min_eig = es.eigenvalues.back();
    if (min_eig < -1e-8) throw NotPSD("minimum eigenvalue " + std::to_string(min_eig));

    ComplexMatrix result = ComplexMatrix::Zero(m.rows(), m.cols());
    for (std::size_t k = 0; k < es.eigenvalues.size(); ++k) {
        const double lam = std::max(0.0, es.eigenvalues[k]);
        const auto v = es.eigenvectors.col(static_cast<Eigen::Index>(k));
        result += std::sqrt(lam) * (v * v.adjoint());
    }
    return result;
}

Matrix2c pauli_x() {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2c pauli_y() {
    Matrix2c m;
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix2c pauli_z() {
    Matrix2c m;
    m << 1, 0, 0, -1;
    return m;
}

Matrix2c identity2() { return Matrix2c::Identity(); }

} // namespace piqfc
