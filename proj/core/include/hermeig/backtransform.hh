#pragma once

#include <hermeig/backend.hh>
#include <hermeig/matrix.hh>
#include <hermeig/tridiag.hh>

namespace hermeig {

/// Y <- Q Y for the unitary stored in `stage` (phase diagonal first, then
/// the reflector groups from last to first, each as one blocked update).
void apply_q(const ReflectorSet& stage, MatrixView<cplx> y, Backend& backend);

/// Eigenvectors of A' from eigenvectors of T: complexifies `yp` and applies
/// the stages in reverse reduction order.
Matrix<cplx> backtransform_standard(const TridiagResult& result, ConstMatrixView<double> yp, Backend& backend);

}  // namespace hermeig
