#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmsim/operators.hpp"

using namespace dmsim;

TEST_CASE("annihilation matrix elements") {
    const auto a2 = annihilation(2);
    CHECK(a2(0, 1).real() == doctest::Approx(1.0));
    CHECK(a2(1, 0) == Complex(0.0, 0.0));
    CHECK(a2(0, 0) == Complex(0.0, 0.0));

    const auto a3 = annihilation(3);
    CHECK(a3(1, 2).real() == doctest::Approx(std::sqrt(2.0)));

    const auto a25 = annihilation(25);
    const ComplexMatrix num = a25.adjoint() * a25;
    for (int k = 0; k < 25; ++k) CHECK(num(k, k).real() == doctest::Approx(k));
    CHECK((num - number_operator(25)).norm() == doctest::Approx(0.0));
}

TEST_CASE("annihilation rejects n < 2") {
    CHECK_THROWS_AS(annihilation(1), std::invalid_argument);
    CHECK_THROWS_AS(annihilation(0), std::invalid_argument);
}

TEST_CASE("truncated commutator [a, a^dag] = diag(1,...,1,-(n-1))") {
    for (int n : {2, 3, 7}) {
        const auto a = annihilation(n);
        const ComplexMatrix comm = a * a.adjoint() - a.adjoint() * a;
        for (int k = 0; k < n - 1; ++k) CHECK(comm(k, k).real() == doctest::Approx(1.0));
        CHECK(comm(n - 1, n - 1).real() == doctest::Approx(-(n - 1.0)));
        CHECK((comm - ComplexMatrix(comm.diagonal().asDiagonal())).norm() ==
              doctest::Approx(0.0));
    }
}

TEST_CASE("embed shapes and identity") {
    const SpaceDims dims{5, 25};
    const auto a_q = embed(annihilation(5), Subsystem::Qubit, dims);
    CHECK(a_q.rows() == 125);
    CHECK(a_q.cols() == 125);

    const auto id = embed(ComplexMatrix::Identity(5, 5), Subsystem::Qubit, dims);
    CHECK((id - ComplexMatrix::Identity(125, 125)).norm() == doctest::Approx(0.0));
}

TEST_CASE("embedded qubit and resonator operators commute") {
    const SpaceDims dims{3, 4};
    const auto a_q = embed(annihilation(3), Subsystem::Qubit, dims);
    const auto a_r = embed(annihilation(4), Subsystem::Resonator, dims);
    CHECK((a_q * a_r - a_r * a_q).norm() == doctest::Approx(0.0));
}

TEST_CASE("embed rejects dimension mismatch") {
    const SpaceDims dims{5, 25};
    CHECK_THROWS_AS(embed(annihilation(4), Subsystem::Qubit, dims), std::invalid_argument);
    CHECK_THROWS_AS(embed(annihilation(5), Subsystem::Resonator, dims), std::invalid_argument);
}

TEST_CASE("embed preserves spectra with multiplicity") {
    const SpaceDims dims{3, 4};
    ComplexMatrix herm = ComplexMatrix::Random(3, 3);
    herm = (herm + herm.adjoint()).eval();
    const auto embedded = embed(herm, Subsystem::Qubit, dims);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> small(herm), big(embedded);
    RealVector expect(12);
    int pos = 0;
    for (int i = 0; i < 3; ++i)
        for (int r = 0; r < 4; ++r) expect(pos++) = small.eigenvalues()(i);
    std::sort(expect.data(), expect.data() + expect.size());
    CHECK((big.eigenvalues() - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("basis kets and joint indexing") {
    const SpaceDims dims{5, 25};
    const auto psi = basis_ket(dims, 1, 3);
    CHECK(psi(1 * 25 + 3).real() == doctest::Approx(1.0));
    CHECK(psi.squaredNorm() == doctest::Approx(1.0));
    CHECK(dims.qubit_level(28) == 1);
    CHECK(dims.resonator_level(28) == 3);
    CHECK_THROWS_AS(basis_ket(dims, 5, 0), std::invalid_argument);
}
