#include <hermeig/backtransform.hh>
#include <hermeig/householder.hh>

#include <algorithm>

namespace hermeig {

void apply_q(const ReflectorSet& stage, MatrixView<cplx> y, Backend& backend) {
    if (y.rows != stage.n()) throw DimensionMismatch("apply_q: panel rows differ from reflector dimension");
    if (y.cols == 0) return;
    if (stage.has_phase()) {
        const auto& phase = stage.phase();
        for (index_t j = 0; j < y.cols; ++j)
            for (index_t i = 0; i < y.rows; ++i) y(i, j) *= phase[static_cast<std::size_t>(i)];
    }
    const auto& groups = stage.groups();
    for (auto g = groups.rbegin(); g != groups.rend(); ++g) {
        index_t lo = stage.n();
        index_t hi = 0;
        for (index_t k = g->first; k < g->first + g->count; ++k) {
            lo = std::min(lo, stage.offset(k));
            hi = std::max(hi, stage.offset(k) + stage.length(k));
        }
        Matrix<cplx> v(hi - lo, g->count);
        std::vector<cplx> taus(static_cast<std::size_t>(g->count));
        bool identity = true;
        for (index_t c = 0; c < g->count; ++c) {
            const index_t k = g->first + c;
            taus[static_cast<std::size_t>(c)] = stage.tau(k);
            identity = identity && stage.tau(k) == cplx{};
            const index_t off = stage.offset(k) - lo;
            v(off, c) = 1.0;
            const cplx* tail = stage.tail(k);
            for (index_t r = 1; r < stage.length(k); ++r) v(off + r, c) = tail[r - 1];
        }
        if (identity) continue;
        const Matrix<cplx> t = block_reflector_factor(v.cview(), taus, backend);
        apply_block_reflector(v.cview(), t.cview(), y.block(lo, 0, hi - lo, y.cols), backend);
    }
}

Matrix<cplx> backtransform_standard(const TridiagResult& result, ConstMatrixView<double> yp, Backend& backend) {
    Matrix<cplx> y = complexify(yp);
    for (auto s = result.stages.rbegin(); s != result.stages.rend(); ++s) apply_q(*s, y.view(), backend);
    return y;
}

}  // namespace hermeig
