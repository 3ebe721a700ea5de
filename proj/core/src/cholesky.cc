#include <hermeig/cholesky.hh>

#include <cmath>

namespace hermeig {

namespace {

// Unblocked lower Cholesky of the diagonal block starting at global index `base`.
void potf2(MatrixView<cplx> a, index_t base) {
    for (index_t j = 0; j < a.cols; ++j) {
        double ajj = a(j, j).real();
        for (index_t p = 0; p < j; ++p) ajj -= std::norm(a(j, p));
        if (!(ajj > 0.0) || !std::isfinite(ajj)) throw NotPositiveDefinite(base + j);
        ajj = std::sqrt(ajj);
        a(j, j) = ajj;
        for (index_t i = j + 1; i < a.rows; ++i) {
            cplx s = a(i, j);
            for (index_t p = 0; p < j; ++p) s -= a(i, p) * std::conj(a(j, p));
            a(i, j) = s / ajj;
        }
    }
}

}  // namespace

TriangularFactor cholesky_factor(const DenseHermitian& b, index_t block, Backend& backend) {
    if (block < 1) throw InvalidArgument("Cholesky block size must be >= 1");
    const index_t n = b.n();
    Matrix<cplx> l = b.matrix();
    MatrixView<cplx> v = l.view();

    for (index_t j = 0; j < n; j += block) {
        const index_t jb = std::min(block, n - j);
        potf2(v.block(j, j, jb, jb), j);
        const index_t rest = n - j - jb;
        if (rest == 0) continue;
        MatrixView<cplx> l21 = v.block(j + jb, j, rest, jb);
        backend.triangular_solve_multi(Side::Right, Op::ConjTrans, v.block(j, j, jb, jb), l21);
        backend.hermitian_rank_update(-1.0, l21, 1.0, v.block(j + jb, j + jb, rest, rest));
    }
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < j; ++i) l(i, j) = 0.0;
    return TriangularFactor(std::move(l));
}

}  // namespace hermeig
