#pragma once

#include <hermeig/matrix.hh>

#include <vector>

namespace hermeig {

template <typename T>
struct JacobiResult {
    std::vector<double> values;  // ascending
    Matrix<T> vectors;           // column j belongs to values[j]
    int sweeps = 0;
};

/// Cyclic Jacobi eigensolver. Sweeps until the off-diagonal Frobenius norm
/// drops below n eps ||A||_F; throws ConvergenceFailure after 30 sweeps.
/// Only the lower triangle of `a` is read.
JacobiResult<cplx> jacobi_eigen(ConstMatrixView<cplx> a);
JacobiResult<double> jacobi_eigen(ConstMatrixView<double> a);

inline JacobiResult<cplx> jacobi_eigen(const DenseHermitian& a) { return jacobi_eigen(a.view()); }

}  // namespace hermeig
