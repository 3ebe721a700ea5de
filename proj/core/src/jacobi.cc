#include <hermeig/jacobi.hh>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hermeig {

namespace {

double conj_of(double x) { return x; }
cplx conj_of(cplx x) { return std::conj(x); }
double real_of(double x) { return x; }
double real_of(cplx x) { return x.real(); }

template <typename T>
double off_norm(const Matrix<T>& a) {
    double s = 0.0;
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = j + 1; i < a.rows(); ++i) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
}

template <typename T>
JacobiResult<T> jacobi(ConstMatrixView<T> in) {
    if (in.rows != in.cols) throw DimensionMismatch("jacobi: matrix is not square");
    const index_t n = in.rows;
    Matrix<T> a(n, n);
    for (index_t j = 0; j < n; ++j) {
        a(j, j) = real_of(in(j, j));
        for (index_t i = j + 1; i < n; ++i) {
            a(i, j) = in(i, j);
            a(j, i) = conj_of(in(i, j));
        }
    }
    Matrix<T> v = Matrix<T>::identity(n);
    const double target = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * frobenius_norm(a.cview());

    JacobiResult<T> result;
    while (off_norm(a) > target) {
        if (result.sweeps == 30) throw ConvergenceFailure("jacobi: no convergence after 30 sweeps");
        ++result.sweeps;
        for (index_t p = 0; p < n - 1; ++p) {
            for (index_t q = p + 1; q < n; ++q) {
                const T apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                // Phase that makes the pivot real, then a real symmetric rotation.
                const T u = conj_of(apq) / mag;
                const double app = real_of(a(p, p));
                const double aqq = real_of(a(q, q));
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::hypot(t, 1.0);
                const double s = t * c;
                const T jpp = c;
                const T jpq = s;
                const T jqp = -s * u;
                const T jqq = c * u;
                for (index_t k = 0; k < n; ++k) {
                    const T x = a(k, p);
                    const T y = a(k, q);
                    a(k, p) = x * jpp + y * jqp;
                    a(k, q) = x * jpq + y * jqq;
                }
                for (index_t k = 0; k < n; ++k) {
                    const T x = a(p, k);
                    const T y = a(q, k);
                    a(p, k) = conj_of(jpp) * x + conj_of(jqp) * y;
                    a(q, k) = conj_of(jpq) * x + conj_of(jqq) * y;
                }
                a(p, q) = T{};
                a(q, p) = T{};
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;
                for (index_t k = 0; k < n; ++k) {
                    const T x = v(k, p);
                    const T y = v(k, q);
                    v(k, p) = x * jpp + y * jqp;
                    v(k, q) = x * jpq + y * jqq;
                }
            }
        }
    }

    std::vector<index_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), index_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](index_t x, index_t y) { return real_of(a(x, x)) < real_of(a(y, y)); });
    result.values.resize(static_cast<std::size_t>(n));
    result.vectors = Matrix<T>(n, n);
    for (index_t c = 0; c < n; ++c) {
        const index_t src = order[static_cast<std::size_t>(c)];
        result.values[static_cast<std::size_t>(c)] = real_of(a(src, src));
        for (index_t r = 0; r < n; ++r) result.vectors(r, c) = v(r, src);
    }
    return result;
}

}  // namespace

JacobiResult<cplx> jacobi_eigen(ConstMatrixView<cplx> a) { return jacobi<cplx>(a); }
JacobiResult<double> jacobi_eigen(ConstMatrixView<double> a) { return jacobi<double>(a); }

}  // namespace hermeig
