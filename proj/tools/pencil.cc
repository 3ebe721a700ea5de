#include "bench.hh"

#include <hermeig/householder.hh>

#include <cmath>
#include <random>

namespace hermeig::bench {

namespace {

// Haar-distributed unitary from the QR factorization of a Gaussian matrix.
Matrix<cplx> random_unitary(index_t n, std::mt19937_64& gen, Backend& backend) {
    std::normal_distribution<double> normal;
    Matrix<cplx> g(n, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) g(i, j) = cplx(normal(gen), normal(gen));

    constexpr index_t nb = 32;
    ReflectorSet qr(ReductionStage::OneStage, n);
    std::vector<double> signs(static_cast<std::size_t>(n), 1.0);
    for (index_t j = 0; j < n; j += nb) {
        const index_t jb = std::min(nb, n - j);
        const index_t m = n - j;
        Matrix<cplx> v(m, jb);
        std::vector<cplx> taus(static_cast<std::size_t>(jb));
        for (index_t c = 0; c < jb; ++c) {
            const index_t col = j + c;
            cplx alpha = g(col, col);
            const index_t len = n - col - 1;
            const cplx tau = make_reflector(alpha, {g.data() + col * n + col + 1, static_cast<std::size_t>(len)});
            signs[static_cast<std::size_t>(col)] = alpha.real() < 0.0 ? -1.0 : 1.0;
            v(c, c) = 1.0;
            for (index_t r = 1; r <= len; ++r) v(c + r, c) = g(col + r, col);
            taus[static_cast<std::size_t>(c)] = tau;
            // H^H on the rest of the panel.
            for (index_t k = c + 1; k < jb; ++k) {
                cplx s{};
                for (index_t r = c; r < m; ++r) s += std::conj(v(r, c)) * g(j + r, j + k);
                s *= std::conj(tau);
                for (index_t r = c; r < m; ++r) g(j + r, j + k) -= v(r, c) * s;
            }
            qr.push(col, g.data() + col * n + col + 1, len, tau);
        }
        qr.close_group();
        if (j + jb < n) {
            const Matrix<cplx> t = block_reflector_factor(v.cview(), taus, backend);
            apply_block_reflector(v.cview(), t.cview(), g.view().block(j, j + jb, m, n - j - jb), backend, true);
        }
    }

    // Q = H_0 ... H_{n-1} diag(sign(r_kk)), applied to the identity.
    Matrix<cplx> q = Matrix<cplx>::identity(n);
    for (index_t k = 0; k < n; ++k) q(k, k) = signs[static_cast<std::size_t>(k)];
    const auto& groups = qr.groups();
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        const index_t lo = qr.offset(it->first);
        const index_t rows = n - lo;
        Matrix<cplx> v(rows, it->count);
        std::vector<cplx> taus(static_cast<std::size_t>(it->count));
        for (index_t c = 0; c < it->count; ++c) {
            const index_t k = it->first + c;
            taus[static_cast<std::size_t>(c)] = qr.tau(k);
            const index_t off = qr.offset(k) - lo;
            v(off, c) = 1.0;
            for (index_t r = 1; r < qr.length(k); ++r) v(off + r, c) = qr.tail(k)[r - 1];
        }
        const Matrix<cplx> t = block_reflector_factor(v.cview(), taus, backend);
        apply_block_reflector(v.cview(), t.cview(), q.view().block(lo, 0, rows, n), backend);
    }
    return q;
}

}  // namespace

Pencil generate_pencil(index_t n, std::uint64_t seed, double cond_b) {
    if (n < 1) throw InvalidArgument("generate_pencil: n must be >= 1");
    if (!(cond_b >= 1.0) || !std::isfinite(cond_b)) throw InvalidArgument("generate_pencil: cond_B must be >= 1");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;

    Matrix<cplx> a(n, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) a(i, j) = cplx(normal(gen), normal(gen));

    ReferenceBackend backend;
    const Matrix<cplx> u = random_unitary(n, gen, backend);
    // B = U^H D U = W^H W with W = D^{1/2} U.
    Matrix<cplx> wh(n, n);
    for (index_t i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        const double s = std::sqrt(std::pow(cond_b, t));
        for (index_t j = 0; j < n; ++j) wh(j, i) = s * std::conj(u(i, j));
    }
    Matrix<cplx> b(n, n);
    backend.hermitian_rank_update(1.0, wh.cview(), 0.0, b.view());
    return {symmetrize(a.cview()), DenseHermitian::from_lower(std::move(b))};
}

}  // namespace hermeig::bench
