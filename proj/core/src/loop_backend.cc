#include <hermeig/backend.hh>

namespace hermeig {

namespace {

template <typename T>
T conj_if(T x, bool conj) {
    if constexpr (std::is_same_v<T, cplx>) {
        return conj ? std::conj(x) : x;
    } else {
        (void)conj;
        return x;
    }
}

// Entry (i, j) of op(A).
template <typename T>
T op_entry(Op op, ConstMatrixView<T> a, index_t i, index_t j) {
    if (op == Op::NoTrans) return a(i, j);
    return conj_if(a(j, i), op == Op::ConjTrans);
}

template <typename T>
void gemm_loops(T alpha, Op op_a, ConstMatrixView<T> a, Op op_b, ConstMatrixView<T> b, T beta, MatrixView<T> c) {
    const index_t k = op_a == Op::NoTrans ? a.cols : a.rows;
    for (index_t j = 0; j < c.cols; ++j) {
        for (index_t i = 0; i < c.rows; ++i) {
            T sum{};
            for (index_t p = 0; p < k; ++p) sum += op_entry(op_a, a, i, p) * op_entry(op_b, b, p, j);
            c(i, j) = alpha * sum + (beta == T{} ? T{} : beta * c(i, j));
        }
    }
}

}  // namespace

void LoopBackend::do_gemm(cplx alpha, Op op_a, ConstMatrixView<cplx> a, Op op_b, ConstMatrixView<cplx> b, cplx beta,
                          MatrixView<cplx> c, Overlap) {
    gemm_loops(alpha, op_a, a, op_b, b, beta, c);
}

void LoopBackend::do_gemm(double alpha, Op op_a, ConstMatrixView<double> a, Op op_b, ConstMatrixView<double> b,
                          double beta, MatrixView<double> c, Overlap) {
    gemm_loops(alpha, op_a, a, op_b, b, beta, c);
}

void LoopBackend::do_herk(double alpha, ConstMatrixView<cplx> v, double beta, MatrixView<cplx> c, Overlap) {
    for (index_t j = 0; j < c.cols; ++j) {
        for (index_t i = j; i < c.rows; ++i) {
            cplx sum{};
            for (index_t p = 0; p < v.cols; ++p) sum += v(i, p) * std::conj(v(j, p));
            c(i, j) = alpha * sum + (beta == 0.0 ? cplx{} : beta * c(i, j));
        }
    }
    mirror_lower(c);
}

void LoopBackend::do_her2k(cplx alpha, ConstMatrixView<cplx> v, ConstMatrixView<cplx> w, double beta,
                           MatrixView<cplx> c, Overlap) {
    for (index_t j = 0; j < c.cols; ++j) {
        for (index_t i = j; i < c.rows; ++i) {
            cplx vw{};
            cplx wv{};
            for (index_t p = 0; p < v.cols; ++p) {
                vw += v(i, p) * std::conj(w(j, p));
                wv += w(i, p) * std::conj(v(j, p));
            }
            c(i, j) = alpha * vw + std::conj(alpha) * wv + (beta == 0.0 ? cplx{} : beta * c(i, j));
        }
    }
    mirror_lower(c);
}

void LoopBackend::do_trsm(Side side, Op op, ConstMatrixView<cplx> l, MatrixView<cplx> x) {
    const index_t n = l.rows;
    const bool conj = op == Op::ConjTrans;
    // op(L) is lower for NoTrans and upper otherwise.
    const bool lower = op == Op::NoTrans;
    auto t = [&](index_t i, index_t j) { return op == Op::NoTrans ? l(i, j) : conj_if(l(j, i), conj); };
    if (side == Side::Left) {
        for (index_t col = 0; col < x.cols; ++col) {
            if (lower) {
                for (index_t i = 0; i < n; ++i) {
                    cplx s = x(i, col);
                    for (index_t p = 0; p < i; ++p) s -= t(i, p) * x(p, col);
                    x(i, col) = s / t(i, i);
                }
            } else {
                for (index_t i = n - 1; i >= 0; --i) {
                    cplx s = x(i, col);
                    for (index_t p = i + 1; p < n; ++p) s -= t(i, p) * x(p, col);
                    x(i, col) = s / t(i, i);
                }
            }
        }
    } else {
        // X op(L) = B, row by row: x_row * T = b_row.
        for (index_t row = 0; row < x.rows; ++row) {
            if (lower) {
                for (index_t j = n - 1; j >= 0; --j) {
                    cplx s = x(row, j);
                    for (index_t p = j + 1; p < n; ++p) s -= x(row, p) * t(p, j);
                    x(row, j) = s / t(j, j);
                }
            } else {
                for (index_t j = 0; j < n; ++j) {
                    cplx s = x(row, j);
                    for (index_t p = 0; p < j; ++p) s -= x(row, p) * t(p, j);
                    x(row, j) = s / t(j, j);
                }
            }
        }
    }
}

void LoopBackend::do_gemv(cplx alpha, Op op, ConstMatrixView<cplx> a, std::span<const cplx> x, cplx beta,
                          std::span<cplx> y) {
    const index_t m = static_cast<index_t>(y.size());
    const index_t k = static_cast<index_t>(x.size());
    for (index_t i = 0; i < m; ++i) {
        cplx sum{};
        for (index_t p = 0; p < k; ++p) sum += op_entry(op, a, i, p) * x[static_cast<std::size_t>(p)];
        auto& yi = y[static_cast<std::size_t>(i)];
        yi = alpha * sum + (beta == cplx{} ? cplx{} : beta * yi);
    }
}

void LoopBackend::do_ger(cplx alpha, std::span<const cplx> x, std::span<const cplx> y, MatrixView<cplx> a) {
    for (index_t j = 0; j < a.cols; ++j) {
        const cplx yj = alpha * std::conj(y[static_cast<std::size_t>(j)]);
        for (index_t i = 0; i < a.rows; ++i) a(i, j) += x[static_cast<std::size_t>(i)] * yj;
    }
}

}  // namespace hermeig
