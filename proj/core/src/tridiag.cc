#include <hermeig/householder.hh>
#include <hermeig/tridiag.hh>

#include <algorithm>
#include <cassert>
#include <cmath>

namespace hermeig {

namespace {

std::span<const cplx> col_span(ConstMatrixView<cplx> m, index_t j, index_t row0, index_t len) {
    return {m.col_ptr(j) + row0, static_cast<std::size_t>(len)};
}

std::span<cplx> col_span(MatrixView<cplx> m, index_t j, index_t row0, index_t len) {
    return {m.col_ptr(j) + row0, static_cast<std::size_t>(len)};
}

// Conjugated copy of row `i`, columns [0, count), of `m`.
std::vector<cplx> conj_row(ConstMatrixView<cplx> m, index_t i, index_t count) {
    std::vector<cplx> r(static_cast<std::size_t>(count));
    for (index_t c = 0; c < count; ++c) r[static_cast<std::size_t>(c)] = std::conj(m(i, c));
    return r;
}

}  // namespace

RealSymTridiagonal make_real_tridiagonal(const std::vector<double>& diag, const std::vector<cplx>& sub,
                                         std::vector<cplx>& phase) {
    const std::size_t n = diag.size();
    if (sub.size() + 1 != n) throw DimensionMismatch("tridiagonal sub-diagonal must have n - 1 entries");
    RealSymTridiagonal t;
    t.d = diag;
    t.e.resize(sub.size());
    phase.assign(n, cplx{1.0, 0.0});
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double mag = std::abs(sub[i]);
        t.e[i] = mag;
        phase[i + 1] = mag == 0.0 ? phase[i] : phase[i] * (sub[i] / mag);
        // Renormalize so rounding does not accumulate along the chain.
        phase[i + 1] /= std::abs(phase[i + 1]);
    }
    return t;
}

TridiagResult tridiagonalize_one_stage(const DenseHermitian& a, index_t panel_width, Backend& backend) {
    const index_t n = a.n();
    if (panel_width < 1) throw InvalidArgument("panel width must be >= 1");

    Matrix<cplx> work = a.matrix();
    ReflectorSet reflectors(ReductionStage::OneStage, n);
    std::vector<double> diag(static_cast<std::size_t>(n));
    std::vector<cplx> sub(static_cast<std::size_t>(std::max<index_t>(n - 1, 0)));

    for (index_t j = 0; j < n - 1; j += panel_width) {
        const index_t size = n - j;
        const index_t kb = std::min(panel_width, size - 1);
        MatrixView<cplx> s = work.view().block(j, j, size, size);
        Matrix<cplx> w(size, kb);
        MatrixView<cplx> wv = w.view();
        std::vector<cplx> taus(static_cast<std::size_t>(kb));

        for (index_t i = 0; i < kb; ++i) {
            // Bring column i up to date with the panel's pending rank-2 updates.
            if (i > 0) {
                const auto w_row = conj_row(wv, i, i);
                backend.matvec_accumulate(-1.0, Op::NoTrans, s.block(i, 0, size - i, i), w_row, 1.0,
                                          col_span(s, i, i, size - i));
                const auto v_row = conj_row(s, i, i);
                backend.matvec_accumulate(-1.0, Op::NoTrans, wv.block(i, 0, size - i, i), v_row, 1.0,
                                          col_span(s, i, i, size - i));
                s(i, i) = cplx(s(i, i).real(), 0.0);
            }

            const index_t len = size - i - 1;
            cplx alpha = s(i + 1, i);
            const cplx tau = make_reflector(alpha, col_span(s, i, i + 2, len - 1));
            taus[static_cast<std::size_t>(i)] = tau;
            sub[static_cast<std::size_t>(j + i)] = alpha;
            s(i + 1, i) = 1.0;

            const auto v = col_span(ConstMatrixView<cplx>(s), i, i + 1, len);
            auto wi = col_span(wv, i, i + 1, len);
            backend.matvec_accumulate(1.0, Op::NoTrans, s.block(i + 1, i + 1, len, len), v, 0.0, wi);
            if (i > 0) {
                std::vector<cplx> tmp(static_cast<std::size_t>(i));
                backend.matvec_accumulate(1.0, Op::ConjTrans, wv.block(i + 1, 0, len, i), v, 0.0, tmp);
                backend.matvec_accumulate(-1.0, Op::NoTrans, s.block(i + 1, 0, len, i), tmp, 1.0, wi);
                backend.matvec_accumulate(1.0, Op::ConjTrans, s.block(i + 1, 0, len, i), v, 0.0, tmp);
                backend.matvec_accumulate(-1.0, Op::NoTrans, wv.block(i + 1, 0, len, i), tmp, 1.0, wi);
            }
            cplx dot{};
            for (index_t r = 0; r < len; ++r) {
                wi[static_cast<std::size_t>(r)] *= tau;
                dot += std::conj(wi[static_cast<std::size_t>(r)]) * v[static_cast<std::size_t>(r)];
            }
            const cplx correction = -0.5 * tau * dot;
            for (index_t r = 0; r < len; ++r) wi[static_cast<std::size_t>(r)] += correction * v[static_cast<std::size_t>(r)];
        }

        // A22 <- A22 - V W^H - W V^H
        backend.hermitian_rank2k_update(-1.0, s.block(kb, 0, size - kb, kb), wv.block(kb, 0, size - kb, kb), 1.0,
                                        s.block(kb, kb, size - kb, size - kb));

        for (index_t i = 0; i < kb; ++i) {
            diag[static_cast<std::size_t>(j + i)] = s(i, i).real();
            const index_t len = size - i - 1;
            reflectors.push(j + i + 1, s.col_ptr(i) + i + 2, len - 1, taus[static_cast<std::size_t>(i)]);
        }
        reflectors.close_group();
    }
    diag[static_cast<std::size_t>(n - 1)] = work(n - 1, n - 1).real();

    std::vector<cplx> phase;
    TridiagResult result;
    result.t = make_real_tridiagonal(diag, sub, phase);
    reflectors.set_phase(std::move(phase));
    result.stages.push_back(std::move(reflectors));
    return result;
}

BandReduction reduce_to_band(const DenseHermitian& a, index_t b, Backend& backend) {
    const index_t n = a.n();
    if (b < 1 || b >= n) throw InvalidArgument("reduce_to_band: need 1 <= b < n");

    Matrix<cplx> work = a.matrix();
    ReflectorSet reflectors(ReductionStage::BandReduction, n);

    for (index_t j = 0; j + b <= n - 2; j += b) {
        const index_t r0 = j + b;
        const index_t m = n - r0;
        const index_t k = std::min(b, m - 1);
        MatrixView<cplx> panel = work.view().block(r0, j, m, b);

        // Panel QR on the host, reflector applications through level-2 calls.
        Matrix<cplx> v(m, k);
        std::vector<cplx> taus(static_cast<std::size_t>(k));
        for (index_t c = 0; c < k; ++c) {
            cplx alpha = panel(c, c);
            const cplx tau = make_reflector(alpha, col_span(panel, c, c + 1, m - c - 1));
            taus[static_cast<std::size_t>(c)] = tau;
            v(c, c) = 1.0;
            for (index_t r = c + 1; r < m; ++r) {
                v(r, c) = panel(r, c);
                panel(r, c) = 0.0;
            }
            panel(c, c) = alpha;
            if (c + 1 < b && tau != cplx{}) {
                const auto vc = col_span(v.cview(), c, c, m - c);
                std::vector<cplx> w(static_cast<std::size_t>(b - c - 1));
                MatrixView<cplx> rest = panel.block(c, c + 1, m - c, b - c - 1);
                backend.matvec_accumulate(1.0, Op::ConjTrans, rest, vc, 0.0, w);
                backend.rank1_update(-std::conj(tau), vc, w, rest);
            }
            reflectors.push(r0 + c, v.data() + c * m + c + 1, m - c - 1, tau);
        }
        reflectors.close_group();

        const Matrix<cplx> t = block_reflector_factor(v.cview(), taus, backend);

        // A22 <- Q^H A22 Q with Q = I - V T V^H, written as A22 - V X^H - X V^H.
        MatrixView<cplx> a22 = work.view().block(r0, r0, m, m);
        Matrix<cplx> av(m, k);
        backend.multiply_accumulate(1.0, Op::NoTrans, a22, Op::NoTrans, v.cview(), 0.0, av.view(), Overlap::Allowed);
        backend.fence();
        Matrix<cplx> x(m, k);
        backend.multiply_accumulate(1.0, Op::NoTrans, av.cview(), Op::NoTrans, t.cview(), 0.0, x.view());
        Matrix<cplx> vx(k, k);
        backend.multiply_accumulate(1.0, Op::ConjTrans, v.cview(), Op::NoTrans, x.cview(), 0.0, vx.view());
        Matrix<cplx> tvx(k, k);
        backend.multiply_accumulate(1.0, Op::ConjTrans, t.cview(), Op::NoTrans, vx.cview(), 0.0, tvx.view());
        backend.multiply_accumulate(-0.5, Op::NoTrans, v.cview(), Op::NoTrans, tvx.cview(), 1.0, x.view());
        backend.hermitian_rank2k_update(-1.0, v.cview(), x.cview(), 1.0, a22, Overlap::Allowed);
        backend.fence();
    }

    return {band_from_dense(DenseHermitian::from_lower(std::move(work)), b), std::move(reflectors)};
}

namespace {

// Lower band storage of half-bandwidth `kd`, wide enough to hold the bulges
// created while chasing a band of half-bandwidth kd / 2.
class ChaseWorkspace {
public:
    ChaseWorkspace(const BandHermitian& band, index_t kd) : n_(band.n()), kd_(kd), data_(kd + 1, band.n()) {
        for (index_t j = 0; j < n_; ++j)
            for (index_t i = j; i < std::min(n_, j + band.bandwidth() + 1); ++i) at(i, j) = band.at(i, j);
    }

    cplx& at(index_t i, index_t j) {
        assert(i >= j && i - j <= kd_);
        return data_(i - j, j);
    }

    // D <- H^H D H on the diagonal block [first, first + v.size()), with
    // H = I - tau v v^H.
    void two_sided(index_t first, const std::vector<cplx>& v, cplx tau) {
        if (tau == cplx{}) return;
        const index_t len = static_cast<index_t>(v.size());
        std::vector<cplx> w(v.size());
        for (index_t r = 0; r < len; ++r) {
            cplx sum{};
            for (index_t c = 0; c < len; ++c) sum += entry(first + r, first + c) * v[static_cast<std::size_t>(c)];
            w[static_cast<std::size_t>(r)] = tau * sum;
        }
        cplx dot{};
        for (index_t r = 0; r < len; ++r) dot += std::conj(w[static_cast<std::size_t>(r)]) * v[static_cast<std::size_t>(r)];
        const cplx alpha = -0.5 * tau * dot;
        for (index_t r = 0; r < len; ++r) w[static_cast<std::size_t>(r)] += alpha * v[static_cast<std::size_t>(r)];
        for (index_t c = 0; c < len; ++c) {
            for (index_t r = c; r < len; ++r) {
                const auto ur = static_cast<std::size_t>(r);
                const auto uc = static_cast<std::size_t>(c);
                at(first + r, first + c) -= v[ur] * std::conj(w[uc]) + w[ur] * std::conj(v[uc]);
            }
            cplx& d = at(first + c, first + c);
            d = cplx(d.real(), 0.0);
        }
    }

    cplx entry(index_t i, index_t j) { return i >= j ? at(i, j) : std::conj(at(j, i)); }

private:
    index_t n_;
    index_t kd_;
    Matrix<cplx> data_;
};

struct ChaseReflector {
    index_t sweep;
    index_t block;
    index_t offset;
    std::vector<cplx> v;  // includes the leading 1
    cplx tau;
};

}  // namespace

index_t default_sweep_group(index_t b) { return std::max<index_t>(1, std::min<index_t>(b, 16)); }

ChaseResult bulge_chase(const BandHermitian& band, index_t sweep_group) {
    const index_t n = band.n();
    const index_t b = band.bandwidth();
    const index_t group = sweep_group > 0 ? std::min(sweep_group, std::max<index_t>(b, 1)) : default_sweep_group(b);

    ChaseResult result;
    result.reflectors = ReflectorSet(ReductionStage::BulgeChase, n);
    std::vector<double> diag(static_cast<std::size_t>(n));
    std::vector<cplx> sub(static_cast<std::size_t>(n - 1));

    if (b <= 1) {
        for (index_t i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = band.at(i, i).real();
        for (index_t i = 0; i + 1 < n; ++i) sub[static_cast<std::size_t>(i)] = b == 1 ? band.at(i + 1, i) : cplx{};
        std::vector<cplx> phase;
        result.t = make_real_tridiagonal(diag, sub, phase);
        result.reflectors.set_phase(std::move(phase));
        return result;
    }

    ChaseWorkspace ws(band, 2 * b);
    std::vector<ChaseReflector> generated;
    std::vector<index_t> blocks_per_sweep(static_cast<std::size_t>(n), 0);

    auto take_column = [&](index_t col, index_t first, index_t last) {
        // Annihilates rows (first, last] of column `col`; returns v and tau.
        const index_t len = last - first + 1;
        std::vector<cplx> v(static_cast<std::size_t>(len));
        v[0] = 1.0;
        for (index_t r = 1; r < len; ++r) v[static_cast<std::size_t>(r)] = ws.at(first + r, col);
        cplx alpha = ws.at(first, col);
        const cplx tau = make_reflector(alpha, std::span<cplx>(v).subspan(1));
        ws.at(first, col) = alpha;
        for (index_t r = 1; r < len; ++r) ws.at(first + r, col) = 0.0;
        return std::pair{std::move(v), tau};
    };

    for (index_t s = 0; s + 1 < n; ++s) {
        index_t st = s + 1;
        index_t ed = std::min(s + b, n - 1);
        auto [v, tau] = take_column(s, st, ed);
        ws.two_sided(st, v, tau);
        index_t blk = 0;
        generated.push_back({s, blk, st, v, tau});

        while (ed + 1 <= n - 1) {
            const index_t j1 = ed + 1;
            const index_t j2 = std::min(ed + b, n - 1);
            // Right application to the block below the diagonal block: B <- B H.
            if (tau != cplx{}) {
                for (index_t i = j1; i <= j2; ++i) {
                    cplx r{};
                    for (index_t c = st; c <= ed; ++c) r += ws.at(i, c) * v[static_cast<std::size_t>(c - st)];
                    r *= tau;
                    for (index_t c = st; c <= ed; ++c) ws.at(i, c) -= r * std::conj(v[static_cast<std::size_t>(c - st)]);
                }
            }
            // Eliminate the first column of the bulge, then apply H^H to the rest of it.
            auto [v2, tau2] = take_column(st, j1, j2);
            if (tau2 != cplx{}) {
                const cplx ct = std::conj(tau2);
                for (index_t c = st + 1; c <= ed; ++c) {
                    cplx r{};
                    for (index_t i = j1; i <= j2; ++i) r += std::conj(v2[static_cast<std::size_t>(i - j1)]) * ws.at(i, c);
                    r *= ct;
                    for (index_t i = j1; i <= j2; ++i) ws.at(i, c) -= v2[static_cast<std::size_t>(i - j1)] * r;
                }
            }
            st = j1;
            ed = j2;
            v = std::move(v2);
            tau = tau2;
            ws.two_sided(st, v, tau);
            generated.push_back({s, ++blk, st, v, tau});
        }
        blocks_per_sweep[static_cast<std::size_t>(s)] = blk + 1;
    }

    for (index_t i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = ws.at(i, i).real();
    for (index_t i = 0; i + 1 < n; ++i) sub[static_cast<std::size_t>(i)] = ws.at(i + 1, i);

    // Regroup: within a block of `group` consecutive sweeps, reflectors with
    // the same chase position form one application group, and groups are
    // ordered from the deepest position up. Reflectors of the same sweep at
    // different positions act on disjoint rows, and a later sweep only
    // overlaps an earlier one at the next-shallower position, so this
    // ordering represents the same product.
    std::vector<index_t> first_of_sweep(static_cast<std::size_t>(n), 0);
    for (index_t s = 1; s + 1 < n; ++s)
        first_of_sweep[static_cast<std::size_t>(s)] =
            first_of_sweep[static_cast<std::size_t>(s - 1)] + blocks_per_sweep[static_cast<std::size_t>(s - 1)];
    for (index_t s0 = 0; s0 + 1 < n; s0 += group) {
        const index_t s1 = std::min(s0 + group, n - 1);
        index_t deepest = 0;
        for (index_t s = s0; s < s1; ++s) deepest = std::max(deepest, blocks_per_sweep[static_cast<std::size_t>(s)] - 1);
        for (index_t blk = deepest; blk >= 0; --blk) {
            for (index_t s = s0; s < s1; ++s) {
                if (blk >= blocks_per_sweep[static_cast<std::size_t>(s)]) continue;
                const ChaseReflector& r =
                    generated[static_cast<std::size_t>(first_of_sweep[static_cast<std::size_t>(s)] + blk)];
                result.reflectors.push(r.offset, r.v.data() + 1, static_cast<index_t>(r.v.size()) - 1, r.tau);
            }
            result.reflectors.close_group();
        }
    }

    std::vector<cplx> phase;
    result.t = make_real_tridiagonal(diag, sub, phase);
    result.reflectors.set_phase(std::move(phase));
    return result;
}

TridiagResult tridiagonalize_two_stage(const DenseHermitian& a, index_t b, Backend& backend, index_t sweep_group) {
    BandReduction stage1 = reduce_to_band(a, b, backend);
    ChaseResult stage2 = bulge_chase(stage1.band, sweep_group);
    TridiagResult result;
    result.t = std::move(stage2.t);
    result.band_width = b;
    result.stages.push_back(std::move(stage1.reflectors));
    result.stages.push_back(std::move(stage2.reflectors));
    return result;
}

}  // namespace hermeig
