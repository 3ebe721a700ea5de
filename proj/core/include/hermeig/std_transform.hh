#pragma once

#include <hermeig/backend.hh>
#include <hermeig/matrix.hh>

namespace hermeig {

/// A' = L^{-1} A L^{-H}, blocked as in LAPACK's zhegst (itype 1, lower).
/// Diagonal blocks are reduced on the host; the off-diagonal pieces go
/// through `backend`. `a` is not modified.
DenseHermitian transform_to_standard(const DenseHermitian& a, const TriangularFactor& l, index_t block,
                                     Backend& backend);

/// X = L^{-H} Y.
Matrix<cplx> backtransform_generalized(const TriangularFactor& l, ConstMatrixView<cplx> y, Backend& backend);

}  // namespace hermeig
