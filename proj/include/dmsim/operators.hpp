#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace dmsim {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

// Truncation of the joint transmon (x) resonator space. Qubit factor first:
// joint index i = m * n_r + n for transmon level m, resonator level n.
struct SpaceDims {
    int n_q = 5;
    int n_r = 25;

    int joint() const { return n_q * n_r; }
    int index(int m, int n) const { return m * n_r + n; }
    int qubit_level(int i) const { return i / n_r; }
    int resonator_level(int i) const { return i % n_r; }

    void validate() const {
        if (n_q < 3) throw std::invalid_argument("SpaceDims: n_q must be >= 3 (leakage level required)");
        if (n_r < 2) throw std::invalid_argument("SpaceDims: n_r must be >= 2");
    }
};

enum class Subsystem { Qubit, Resonator };

// Truncated bosonic lowering operator: entries sqrt(k) at (k-1, k).
ComplexMatrix annihilation(int n);

// a^dagger a on an n-level subsystem.
ComplexMatrix number_operator(int n);

// op (x) I or I (x) op on the joint space, qubit factor first.
ComplexMatrix embed(const ComplexMatrix& op, Subsystem which, const SpaceDims& dims);

// |m,n><m,n| basis projector helpers.
ComplexVector basis_ket(const SpaceDims& dims, int m, int n);
ComplexMatrix pure_density(const ComplexVector& psi);

}  // namespace dmsim
