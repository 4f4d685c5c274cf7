#ifndef PIQFC_LINALG_HPP
#define PIQFC_LINALG_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "piqfc/errors.hpp"

namespace piqfc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector2c = Eigen::Vector2cd;
using Vector4c = Eigen::Vector4cd;

/// Result of a Hermitian eigendecomposition, eigenvalues sorted descending.
/// Column k of `eigenvectors` belongs to `eigenvalues[k]`.
struct Eigensystem {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-8);

/// Eigendecomposition of a Hermitian matrix. Throws NotHermitian if the
/// symmetry check at `herm_tol` fails.
Eigensystem hermitian_eigensystem(const ComplexMatrix& m, double herm_tol = 1e-8);

/// Principal square root of a Hermitian PSD matrix. Throws NotPSD if the
/// smallest eigenvalue is below -1e-8.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

// Fixed single-qubit operators in the (H, V) basis.
Matrix2c pauli_x();
Matrix2c pauli_y();
Matrix2c pauli_z();
Matrix2c identity2();

} // namespace piqfc

#endif
