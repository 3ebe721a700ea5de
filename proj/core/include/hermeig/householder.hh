#pragma once

#include <hermeig/backend.hh>
#include <hermeig/matrix.hh>

#include <span>

namespace hermeig {

/// Generates H = I - tau v v^H with v = [1; tail] such that
/// H^H [alpha; x] = [beta; 0] and beta is real. On return `alpha` holds beta
/// and `x` holds the tail of v. A zero `x` yields tau = 0 and leaves `alpha`
/// untouched, even when it is complex.
cplx make_reflector(cplx& alpha, std::span<cplx> x);

/// Triangular factor T of a block reflector: H_0 H_1 ... H_{k-1} = I - V T V^H
/// for the columns of `v` (explicit unit entries, zeros outside support).
/// V^H V goes through the backend.
Matrix<cplx> block_reflector_factor(ConstMatrixView<cplx> v, std::span<const cplx> taus, Backend& backend);

/// Y <- (I - V T V^H) Y, or with T^H when `adjoint` is set.
void apply_block_reflector(ConstMatrixView<cplx> v, ConstMatrixView<cplx> t, MatrixView<cplx> y, Backend& backend,
                           bool adjoint = false);

}  // namespace hermeig
