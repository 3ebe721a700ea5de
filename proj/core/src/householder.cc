#include <hermeig/householder.hh>

#include <cmath>
#include <limits>

namespace hermeig {

namespace {

double norm2(std::span<const cplx> x) {
    double scale = 0.0;
    double ssq = 1.0;
    auto add = [&](double v) {
        if (v == 0.0) return;
        const double a = std::abs(v);
        if (scale < a) {
            ssq = 1.0 + ssq * (scale / a) * (scale / a);
            scale = a;
        } else {
            ssq += (a / scale) * (a / scale);
        }
    };
    for (const cplx& z : x) {
        add(z.real());
        add(z.imag());
    }
    return scale * std::sqrt(ssq);
}

}  // namespace

cplx make_reflector(cplx& alpha, std::span<cplx> x) {
    const double xnorm = norm2(x);
    if (xnorm == 0.0) return {};

    const double alphr = alpha.real();
    const double alphi = alpha.imag();
    double beta = -std::copysign(std::hypot(std::hypot(alphr, alphi), xnorm), alphr);

    // Rescale when beta would underflow, as zlarfg does.
    const double safmin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    const double rsafmn = 1.0 / safmin;
    int rescaled = 0;
    cplx a = alpha;
    if (std::abs(beta) < safmin) {
        double xn = xnorm;
        do {
            ++rescaled;
            for (cplx& z : x) z *= rsafmn;
            beta *= rsafmn;
            a *= rsafmn;
        } while (std::abs(beta) < safmin && rescaled < 20);
        xn = norm2(x);
        beta = -std::copysign(std::hypot(std::hypot(a.real(), a.imag()), xn), a.real());
    }

    const cplx tau((beta - a.real()) / beta, -a.imag() / beta);
    const cplx scale = 1.0 / (a - beta);
    for (cplx& z : x) z *= scale;
    for (int i = 0; i < rescaled; ++i) beta *= safmin;
    alpha = beta;
    return tau;
}

Matrix<cplx> block_reflector_factor(ConstMatrixView<cplx> v, std::span<const cplx> taus, Backend& backend) {
    const index_t k = v.cols;
    if (static_cast<index_t>(taus.size()) != k) throw DimensionMismatch("block reflector: one tau per column");
    Matrix<cplx> s(k, k);
    backend.multiply_accumulate(1.0, Op::ConjTrans, v, Op::NoTrans, v, 0.0, s.view());

    Matrix<cplx> t(k, k);
    std::vector<cplx> z(static_cast<std::size_t>(k));
    for (index_t i = 0; i < k; ++i) {
        const cplx tau = taus[static_cast<std::size_t>(i)];
        t(i, i) = tau;
        if (tau == cplx{}) continue;
        for (index_t r = 0; r < i; ++r) z[static_cast<std::size_t>(r)] = -tau * s(r, i);
        for (index_t r = 0; r < i; ++r) {
            cplx sum{};
            for (index_t c = r; c < i; ++c) sum += t(r, c) * z[static_cast<std::size_t>(c)];
            t(r, i) = sum;
        }
    }
    return t;
}

void apply_block_reflector(ConstMatrixView<cplx> v, ConstMatrixView<cplx> t, MatrixView<cplx> y, Backend& backend,
                           bool adjoint) {
    const index_t k = v.cols;
    if (v.rows != y.rows || t.rows != k || t.cols != k) throw DimensionMismatch("apply_block_reflector");
    if (k == 0 || y.cols == 0) return;
    Matrix<cplx> w(k, y.cols);
    backend.multiply_accumulate(1.0, Op::ConjTrans, v, Op::NoTrans, y, 0.0, w.view());
    Matrix<cplx> tw(k, y.cols);
    backend.multiply_accumulate(1.0, adjoint ? Op::ConjTrans : Op::NoTrans, t, Op::NoTrans, w.cview(), 0.0,
                                tw.view());
    backend.multiply_accumulate(-1.0, Op::NoTrans, v, Op::NoTrans, tw.cview(), 1.0, y);
}

}  // namespace hermeig
