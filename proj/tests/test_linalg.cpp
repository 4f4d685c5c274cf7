#include <doctest.h>

#include <piqfc/linalg.hpp>
#include <piqfc/state.hpp>

#include "test_util.hpp"

using namespace piqfc;

TEST_CASE("kron of identities is the identity") {
    const ComplexMatrix k = kron(identity2(), identity2());
    CHECK((k - Matrix4c::Identity()).norm() == doctest::Approx(0.0));
}

TEST_CASE("kron(Z, I) is diag(1, 1, -1, -1)") {
    const ComplexMatrix k = kron(pauli_z(), identity2());
    Matrix4c expected = Matrix4c::Zero();
    expected(0, 0) = 1;
    expected(1, 1) = 1;
    expected(2, 2) = -1;
    expected(3, 3) = -1;
    CHECK((k - expected).norm() < 1e-15);
}

TEST_CASE("kron(sigma_y, sigma_y) expanded entrywise") {
    // Hand oracle: (sy)x(sy) entry (2i+k, 2j+l) = sy(i,j) sy(k,l).
    const Matrix2c sy = pauli_y();
    Matrix4c expected;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) expected(2 * i + k, 2 * j + l) = sy(i, j) * sy(k, l);
    CHECK((kron(sy, sy) - ComplexMatrix(expected)).norm() < 1e-15);
    // antidiagonal (-1, 1, 1, -1)
    CHECK(expected(0, 3) == Complex(-1.0, 0.0));
    CHECK(expected(1, 2) == Complex(1.0, 0.0));
    CHECK(expected(2, 1) == Complex(1.0, 0.0));
    CHECK(expected(3, 0) == Complex(-1.0, 0.0));
}

TEST_CASE("kron is associative") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = testutil::random_ginibre(rng, 2, 2);
        const ComplexMatrix b = testutil::random_ginibre(rng, 2, 3);
        const ComplexMatrix c = testutil::random_ginibre(rng, 3, 2);
        const ComplexMatrix lhs = kron(kron(a, b), c);
        const ComplexMatrix rhs = kron(a, kron(b, c));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("hermitian_eigensystem on simple matrices") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 3;
    d(1, 1) = 1;
    auto es = hermitian_eigensystem(d);
    CHECK(es.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(es.eigenvalues[1] == doctest::Approx(1.0));

    auto esx = hermitian_eigensystem(pauli_x());
    CHECK(esx.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(esx.eigenvalues[1] == doctest::Approx(-1.0));
}

TEST_CASE("hermitian_eigensystem reconstructs and is orthonormal") {
    Rng rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix m = testutil::random_hermitian(rng, 4);
        auto es = hermitian_eigensystem(m);

        ComplexMatrix rebuilt = ComplexMatrix::Zero(4, 4);
        for (int k = 0; k < 4; ++k)
            rebuilt += es.eigenvalues[static_cast<std::size_t>(k)] *
                       (es.eigenvectors.col(k) * es.eigenvectors.col(k).adjoint());
        CHECK((rebuilt - m).norm() < 1e-9);
        CHECK((es.eigenvectors.adjoint() * es.eigenvectors - ComplexMatrix::Identity(4, 4)).norm() <
              1e-9);
        for (std::size_t k = 1; k < es.eigenvalues.size(); ++k)
            CHECK(es.eigenvalues[k - 1] >= es.eigenvalues[k]);
    }
}

TEST_CASE("hermitian_eigensystem rejects non-Hermitian input") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigensystem(m), NotHermitian);
    CHECK_THROWS_AS(hermitian_eigensystem(ComplexMatrix::Zero(2, 3)), NotHermitian);
}

TEST_CASE("matrix_sqrt_psd on diagonal matrices") {
    CHECK((matrix_sqrt_psd(ComplexMatrix::Identity(4, 4)) - ComplexMatrix::Identity(4, 4)).norm() <
          1e-12);

    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    d(0, 0) = 4;
    d(1, 1) = 1;
    const ComplexMatrix r = matrix_sqrt_psd(d);
    CHECK(r(0, 0).real() == doctest::Approx(2.0));
    CHECK(r(1, 1).real() == doctest::Approx(1.0));
    CHECK(std::abs(r(2, 2)) < 1e-12);
}

TEST_CASE("matrix_sqrt_psd squares back to the input") {
    Rng rng(33);
    for (int trial = 0; trial < 30; ++trial) {
        const ComplexMatrix g = testutil::random_ginibre(rng, 4, 4);
        const ComplexMatrix psd = g * g.adjoint();
        const ComplexMatrix r = matrix_sqrt_psd(psd);
        CHECK((r * r - psd).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(is_hermitian(r, 1e-9));
    }
}

TEST_CASE("matrix_sqrt_psd rejects indefinite input") {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(1, 1) = -1.0;
    CHECK_THROWS_AS(matrix_sqrt_psd(m), NotPSD);
}

TEST_CASE("normalize_to_state basics") {
    const Vector4c psi = phi_plus();
    const Matrix4c twice = 2.0 * (psi * psi.adjoint());
    const TwoQubitState s = normalize_to_state(twice);
    CHECK(fidelity_to_ket(s, psi) == doctest::Approx(1.0));

    const TwoQubitState mixed = normalize_to_state(ComplexMatrix::Identity(4, 4));
    CHECK((mixed.rho() - 0.25 * Matrix4c::Identity()).norm() < 1e-14);
}

TEST_CASE("normalize_to_state clips tiny negative eigenvalues") {
    const Vector4c psi = phi_plus();
    Matrix4c m = psi * psi.adjoint();
    // Perturb a pure projector so one eigenvalue dips to about -1e-12.
    Vector4c other = Vector4c::Zero();
    other(1) = 1.0;
    m -= 1e-12 * (other * other.adjoint());
    const TwoQubitState s = normalize_to_state(m);
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(s.rho());
    CHECK(solver.eigenvalues().minCoeff() >= 0.0);
    CHECK(std::abs(s.rho().trace().real() - 1.0) < 1e-12);
}

TEST_CASE("normalize_to_state rejects zero trace and non-Hermitian input") {
    CHECK_THROWS_AS(normalize_to_state(ComplexMatrix::Zero(4, 4)), ZeroTrace);
    ComplexMatrix bad = ComplexMatrix::Identity(4, 4);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(normalize_to_state(bad), NotHermitian);
}

TEST_CASE("normalize_to_state output satisfies state invariants for random input") {
    Rng rng(44);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexMatrix h = testutil::random_hermitian(rng, 4);
        h += 5.0 * ComplexMatrix::Identity(4, 4); // ensure positive trace
        CHECK_NOTHROW(normalize_to_state(h));
    }
}
