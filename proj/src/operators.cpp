#include "dmsim/operators.hpp"

#include <cmath>

namespace dmsim {

ComplexMatrix annihilation(int n) {
    if (n < 2) throw std::invalid_argument("annihilation: dimension must be >= 2");
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

ComplexMatrix number_operator(int n) {
    if (n < 2) throw std::invalid_argument("number_operator: dimension must be >= 2");
    ComplexMatrix num = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) num(k, k) = static_cast<double>(k);
    return num;
}

ComplexMatrix embed(const ComplexMatrix& op, Subsystem which, const SpaceDims& dims) {
    dims.validate();
    const int d_op = which == Subsystem::Qubit ? dims.n_q : dims.n_r;
    if (op.rows() != d_op || op.cols() != d_op)
        throw std::invalid_argument("embed: operator dimension does not match subsystem");

    const int dim = dims.joint();
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    if (which == Subsystem::Qubit) {
        // op (x) I_r: block (m, m') is op(m, m') * I
        for (int m = 0; m < dims.n_q; ++m)
            for (int mp = 0; mp < dims.n_q; ++mp)
                if (op(m, mp) != Complex(0.0, 0.0))
                    out.block(m * dims.n_r, mp * dims.n_r, dims.n_r, dims.n_r) =
                        op(m, mp) * ComplexMatrix::Identity(dims.n_r, dims.n_r);
    } else {
        // I_q (x) op: copy op into each diagonal block
        for (int m = 0; m < dims.n_q; ++m)
            out.block(m * dims.n_r, m * dims.n_r, dims.n_r, dims.n_r) = op;
    }
    return out;
}

ComplexVector basis_ket(const SpaceDims& dims, int m, int n) {
    if (m < 0 || m >= dims.n_q || n < 0 || n >= dims.n_r)
        throw std::invalid_argument("basis_ket: level outside truncation");
    ComplexVector psi = ComplexVector::Zero(dims.joint());
    psi(dims.index(m, n)) = 1.0;
    return psi;
}

ComplexMatrix pure_density(const ComplexVector& psi) {
    return psi * psi.adjoint();
}

}  // namespace dmsim
