#include <hermeig/backend.hh>

#include <cblas.h>

#include <algorithm>

namespace hermeig {

namespace {

CBLAS_TRANSPOSE complex_trans(Op op) {
    switch (op) {
        case Op::NoTrans: return CblasNoTrans;
        case Op::Trans: return CblasTrans;
        case Op::ConjTrans: return CblasConjTrans;
    }
    return CblasNoTrans;
}

CBLAS_TRANSPOSE real_trans(Op op) { return op == Op::NoTrans ? CblasNoTrans : CblasTrans; }

// BLAS rejects ld < 1 even for empty operands.
template <typename T>
int ld_of(ConstMatrixView<T> v) {
    return static_cast<int>(std::max<index_t>({v.ld, v.rows, 1}));
}

int as_int(index_t x) { return static_cast<int>(x); }

}  // namespace

void ReferenceBackend::do_gemm(cplx alpha, Op op_a, ConstMatrixView<cplx> a, Op op_b, ConstMatrixView<cplx> b,
                               cplx beta, MatrixView<cplx> c, Overlap) {
    const index_t k = op_a == Op::NoTrans ? a.cols : a.rows;
    cblas_zgemm(CblasColMajor, complex_trans(op_a), complex_trans(op_b), as_int(c.rows), as_int(c.cols), as_int(k),
                &alpha, a.ptr, ld_of(a), b.ptr, ld_of(b), &beta, c.ptr, ld_of<cplx>(c));
}

void ReferenceBackend::do_gemm(double alpha, Op op_a, ConstMatrixView<double> a, Op op_b, ConstMatrixView<double> b,
                               double beta, MatrixView<double> c, Overlap) {
    const index_t k = op_a == Op::NoTrans ? a.cols : a.rows;
    cblas_dgemm(CblasColMajor, real_trans(op_a), real_trans(op_b), as_int(c.rows), as_int(c.cols), as_int(k), alpha,
                a.ptr, ld_of(a), b.ptr, ld_of(b), beta, c.ptr, ld_of<double>(c));
}

void ReferenceBackend::do_herk(double alpha, ConstMatrixView<cplx> v, double beta, MatrixView<cplx> c, Overlap) {
    cblas_zherk(CblasColMajor, CblasLower, CblasNoTrans, as_int(c.rows), as_int(v.cols), alpha, v.ptr, ld_of(v), beta,
                c.ptr, ld_of<cplx>(c));
    mirror_lower(c);
}

void ReferenceBackend::do_her2k(cplx alpha, ConstMatrixView<cplx> v, ConstMatrixView<cplx> w, double beta,
                                MatrixView<cplx> c, Overlap) {
    cblas_zher2k(CblasColMajor, CblasLower, CblasNoTrans, as_int(c.rows), as_int(v.cols), &alpha, v.ptr, ld_of(v),
                 w.ptr, ld_of(w), beta, c.ptr, ld_of<cplx>(c));
    mirror_lower(c);
}

void ReferenceBackend::do_trsm(Side side, Op op, ConstMatrixView<cplx> l, MatrixView<cplx> x) {
    const cplx one{1.0, 0.0};
    cblas_ztrsm(CblasColMajor, side == Side::Left ? CblasLeft : CblasRight, CblasLower, complex_trans(op),
                CblasNonUnit, as_int(x.rows), as_int(x.cols), &one, l.ptr, ld_of(l), x.ptr, ld_of<cplx>(x));
}

void ReferenceBackend::do_gemv(cplx alpha, Op op, ConstMatrixView<cplx> a, std::span<const cplx> x, cplx beta,
                               std::span<cplx> y) {
    if (a.empty()) {
        // y <- beta y; zgemv with a zero dimension would leave y untouched.
        for (auto& v : y) v = beta == cplx{} ? cplx{} : beta * v;
        return;
    }
    cblas_zgemv(CblasColMajor, complex_trans(op), as_int(a.rows), as_int(a.cols), &alpha, a.ptr, ld_of(a), x.data(),
                1, &beta, y.data(), 1);
}

void ReferenceBackend::do_ger(cplx alpha, std::span<const cplx> x, std::span<const cplx> y, MatrixView<cplx> a) {
    cblas_zgerc(CblasColMajor, as_int(a.rows), as_int(a.cols), &alpha, x.data(), 1, y.data(), 1, a.ptr,
                ld_of<cplx>(a));
}

}  // namespace hermeig
