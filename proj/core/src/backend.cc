#include <hermeig/backend.hh>

#include <algorithm>

namespace hermeig {

namespace {

template <typename T>
index_t op_rows(Op op, ConstMatrixView<T> a) {
    return op == Op::NoTrans ? a.rows : a.cols;
}

template <typename T>
index_t op_cols(Op op, ConstMatrixView<T> a) {
    return op == Op::NoTrans ? a.cols : a.rows;
}

std::uint64_t u64(index_t x) { return static_cast<std::uint64_t>(x); }

template <typename T>
void check_gemm(Op op_a, ConstMatrixView<T> a, Op op_b, ConstMatrixView<T> b, MatrixView<T> c) {
    if (op_rows(op_a, a) != c.rows || op_cols(op_b, b) != c.cols || op_cols(op_a, a) != op_rows(op_b, b))
        throw DimensionMismatch("multiply_accumulate: non-conformable operands");
}

struct Registry {
    std::mutex mutex;
    std::map<std::string, BackendFactory, std::less<>> factories;

    Registry() {
        factories["reference"] = [] { return std::make_unique<ReferenceBackend>(); };
        factories["loops"] = [] { return std::make_unique<LoopBackend>(); };
    }
};

Registry& registry() {
    static Registry r;
    return r;
}

}  // namespace

double BackendOpCounts::level2_fraction() const {
    const auto total = total_flops();
    return total == 0 ? 0.0 : static_cast<double>(level2_flops) / static_cast<double>(total);
}

BackendOpCounts BackendOpCounts::since(const BackendOpCounts& earlier) const {
    BackendOpCounts d;
    d.level2_flops = level2_flops - earlier.level2_flops;
    d.level3_flops = level3_flops - earlier.level3_flops;
    for (const auto& [op, count] : calls) {
        auto it = earlier.calls.find(op);
        const auto delta = count - (it == earlier.calls.end() ? 0 : it->second);
        if (delta != 0) d.calls[op] = delta;
    }
    return d;
}

BackendOpCounts& BackendOpCounts::operator+=(const BackendOpCounts& other) {
    level2_flops += other.level2_flops;
    level3_flops += other.level3_flops;
    for (const auto& [op, count] : other.calls) calls[op] += count;
    return *this;
}

void Backend::record(const char* op, std::uint64_t level2, std::uint64_t level3) {
    std::lock_guard lock(mutex_);
    counts_.level2_flops += level2;
    counts_.level3_flops += level3;
    ++counts_.calls[op];
}

BackendOpCounts Backend::counts() const {
    std::lock_guard lock(mutex_);
    return counts_;
}

void Backend::reset_counts() {
    std::lock_guard lock(mutex_);
    counts_ = {};
}

void Backend::multiply_accumulate(cplx alpha, Op op_a, ConstMatrixView<cplx> a, Op op_b, ConstMatrixView<cplx> b,
                                  cplx beta, MatrixView<cplx> c, Overlap hint) {
    check_gemm(op_a, a, op_b, b, c);
    if (c.empty()) return;
    do_gemm(alpha, op_a, a, op_b, b, beta, c, hint);
    record("multiply_accumulate", 0, 8 * u64(c.rows) * u64(c.cols) * u64(op_cols(op_a, a)));
}

void Backend::multiply_accumulate(double alpha, Op op_a, ConstMatrixView<double> a, Op op_b,
                                  ConstMatrixView<double> b, double beta, MatrixView<double> c, Overlap hint) {
    check_gemm(op_a, a, op_b, b, c);
    if (c.empty()) return;
    do_gemm(alpha, op_a, a, op_b, b, beta, c, hint);
    record("multiply_accumulate_real", 0, 2 * u64(c.rows) * u64(c.cols) * u64(op_cols(op_a, a)));
}

void Backend::hermitian_rank_update(double alpha, ConstMatrixView<cplx> v, double beta, MatrixView<cplx> c,
                                    Overlap hint) {
    if (c.rows != c.cols || v.rows != c.rows) throw DimensionMismatch("hermitian_rank_update: non-conformable");
    if (c.empty()) return;
    do_herk(alpha, v, beta, c, hint);
    record("hermitian_rank_update", 0, 4 * u64(c.rows) * u64(c.rows) * u64(v.cols));
}

void Backend::hermitian_rank2k_update(cplx alpha, ConstMatrixView<cplx> v, ConstMatrixView<cplx> w, double beta,
                                      MatrixView<cplx> c, Overlap hint) {
    if (c.rows != c.cols || v.rows != c.rows || w.rows != c.rows || v.cols != w.cols)
        throw DimensionMismatch("hermitian_rank2k_update: non-conformable");
    if (c.empty()) return;
    do_her2k(alpha, v, w, beta, c, hint);
    record("hermitian_rank2k_update", 0, 8 * u64(c.rows) * u64(c.rows) * u64(v.cols));
}

void Backend::triangular_solve_multi(Side side, Op op, ConstMatrixView<cplx> l, MatrixView<cplx> x) {
    const index_t order = side == Side::Left ? x.rows : x.cols;
    if (l.rows != l.cols || l.rows != order) throw DimensionMismatch("triangular_solve_multi: non-conformable");
    if (x.empty()) return;
    do_trsm(side, op, l, x);
    const index_t other = side == Side::Left ? x.cols : x.rows;
    record("triangular_solve_multi", 0, 4 * u64(order) * u64(order) * u64(other));
}

void Backend::matvec_accumulate(cplx alpha, Op op, ConstMatrixView<cplx> a, std::span<const cplx> x, cplx beta,
                                std::span<cplx> y) {
    if (static_cast<index_t>(x.size()) != op_cols(op, a) || static_cast<index_t>(y.size()) != op_rows(op, a))
        throw DimensionMismatch("matvec_accumulate: non-conformable");
    if (y.empty()) return;
    do_gemv(alpha, op, a, x, beta, y);
    record("matvec_accumulate", 8 * u64(a.rows) * u64(a.cols), 0);
}

void Backend::rank1_update(cplx alpha, std::span<const cplx> x, std::span<const cplx> y, MatrixView<cplx> a) {
    if (static_cast<index_t>(x.size()) != a.rows || static_cast<index_t>(y.size()) != a.cols)
        throw DimensionMismatch("rank1_update: non-conformable");
    if (a.empty()) return;
    do_ger(alpha, x, y, a);
    record("rank1_update", 8 * u64(a.rows) * u64(a.cols), 0);
}

void register_backend(const std::string& name, BackendFactory factory) {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    r.factories[name] = std::move(factory);
}

std::unique_ptr<Backend> make_backend(std::string_view name) {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    auto it = r.factories.find(name);
    if (it == r.factories.end()) throw InvalidArgument("unknown backend '" + std::string(name) + "'");
    return it->second();
}

std::vector<std::string> backend_names() {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    std::vector<std::string> names;
    for (const auto& [name, factory] : r.factories) names.push_back(name);
    return names;
}

}  // namespace hermeig
