#pragma once

#include <hermeig/backend.hh>
#include <hermeig/matrix.hh>

namespace hermeig {

inline constexpr index_t default_cholesky_block = 64;

/// Right-looking blocked Cholesky B = L L^H. Diagonal blocks are factored on
/// the host; the panel solve and the trailing update go through `backend`.
/// Throws NotPositiveDefinite with the 0-based index of the failing pivot.
TriangularFactor cholesky_factor(const DenseHermitian& b, index_t block, Backend& backend);

}  // namespace hermeig
