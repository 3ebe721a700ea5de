#include <hermeig/std_transform.hh>

namespace hermeig {

namespace {

// zhegs2, lower: the diagonal block A11 <- L11^{-1} A11 L11^{-H}, working on
// the lower triangle only.
void hegs2(MatrixView<cplx> a, ConstMatrixView<cplx> l) {
    const index_t n = a.rows;
    for (index_t k = 0; k < n; ++k) {
        const double bkk = l(k, k).real();
        double akk = a(k, k).real() / (bkk * bkk);
        a(k, k) = akk;
        if (k + 1 == n) continue;
        const index_t m = n - k - 1;
        for (index_t i = 0; i < m; ++i) a(k + 1 + i, k) /= bkk;
        const cplx ct = -0.5 * akk;
        for (index_t i = 0; i < m; ++i) a(k + 1 + i, k) += ct * l(k + 1 + i, k);
        // zher2: A22 <- A22 - a b^H - b a^H, lower triangle.
        for (index_t c = 0; c < m; ++c) {
            const cplx ac = std::conj(a(k + 1 + c, k));
            const cplx bc = std::conj(l(k + 1 + c, k));
            for (index_t r = c; r < m; ++r)
                a(k + 1 + r, k + 1 + c) -= a(k + 1 + r, k) * bc + l(k + 1 + r, k) * ac;
            a(k + 1 + c, k + 1 + c) = cplx(a(k + 1 + c, k + 1 + c).real(), 0.0);
        }
        for (index_t i = 0; i < m; ++i) a(k + 1 + i, k) += ct * l(k + 1 + i, k);
        // ztrsv: solve L22 x = a(k+1:n, k).
        for (index_t r = 0; r < m; ++r) {
            cplx s = a(k + 1 + r, k);
            for (index_t p = 0; p < r; ++p) s -= l(k + 1 + r, k + 1 + p) * a(k + 1 + p, k);
            a(k + 1 + r, k) = s / l(k + 1 + r, k + 1 + r).real();
        }
    }
}

// Lower triangle of a Hermitian block as a full matrix.
Matrix<cplx> full_hermitian(ConstMatrixView<cplx> a) {
    Matrix<cplx> m = to_matrix(a);
    mirror_lower(m.view());
    return m;
}

}  // namespace

DenseHermitian transform_to_standard(const DenseHermitian& a, const TriangularFactor& l, index_t block,
                                     Backend& backend) {
    const index_t n = a.n();
    if (l.n() != n) throw DimensionMismatch("transform_to_standard: A and L differ in size");
    if (block < 1) throw InvalidArgument("transform block size must be >= 1");
    Matrix<cplx> work = a.matrix();
    MatrixView<cplx> w = work.view();
    ConstMatrixView<cplx> lv = l.view();

    for (index_t k = 0; k < n; k += block) {
        const index_t kb = std::min(block, n - k);
        hegs2(w.block(k, k, kb, kb), lv.block(k, k, kb, kb));
        const index_t rest = n - k - kb;
        if (rest == 0) continue;
        MatrixView<cplx> a21 = w.block(k + kb, k, rest, kb);
        ConstMatrixView<cplx> l21 = lv.block(k + kb, k, rest, kb);
        const Matrix<cplx> a11 = full_hermitian(w.block(k, k, kb, kb));

        backend.triangular_solve_multi(Side::Right, Op::ConjTrans, lv.block(k, k, kb, kb), a21);
        backend.multiply_accumulate(-0.5, Op::NoTrans, l21, Op::NoTrans, a11.cview(), 1.0, a21);
        backend.hermitian_rank2k_update(-1.0, a21, l21, 1.0, w.block(k + kb, k + kb, rest, rest));
        backend.multiply_accumulate(-0.5, Op::NoTrans, l21, Op::NoTrans, a11.cview(), 1.0, a21);
        backend.triangular_solve_multi(Side::Left, Op::NoTrans, lv.block(k + kb, k + kb, rest, rest), a21);
    }
    return DenseHermitian::from_lower(std::move(work));
}

Matrix<cplx> backtransform_generalized(const TriangularFactor& l, ConstMatrixView<cplx> y, Backend& backend) {
    if (y.rows != l.n()) throw DimensionMismatch("backtransform_generalized: row count differs from L");
    Matrix<cplx> x = to_matrix(y);
    backend.triangular_solve_multi(l, Side::Left, Op::ConjTrans, x.view());
    return x;
}

}  // namespace hermeig
