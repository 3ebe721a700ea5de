#include <hermeig/matrix.hh>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hermeig {

Matrix<cplx> complexify(ConstMatrixView<double> v) {
    Matrix<cplx> m(v.rows, v.cols);
    for (index_t j = 0; j < v.cols; ++j)
        for (index_t i = 0; i < v.rows; ++i) m(i, j) = v(i, j);
    return m;
}

Matrix<cplx> conj_transpose(ConstMatrixView<cplx> v) {
    Matrix<cplx> m(v.cols, v.rows);
    for (index_t j = 0; j < v.cols; ++j)
        for (index_t i = 0; i < v.rows; ++i) m(j, i) = std::conj(v(i, j));
    return m;
}

double frobenius_norm(ConstMatrixView<cplx> v) {
    // Scaled sum of squares, as in LAPACK's zlassq.
    double scale = 0.0;
    double ssq = 1.0;
    auto accumulate = [&](double x) {
        if (x == 0.0) return;
        const double ax = std::abs(x);
        if (scale < ax) {
            ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
            scale = ax;
        } else {
            ssq += (ax / scale) * (ax / scale);
        }
    };
    for (index_t j = 0; j < v.cols; ++j)
        for (index_t i = 0; i < v.rows; ++i) {
            accumulate(v(i, j).real());
            accumulate(v(i, j).imag());
        }
    return scale * std::sqrt(ssq);
}

double frobenius_norm(ConstMatrixView<double> v) {
    double scale = 0.0;
    double ssq = 1.0;
    for (index_t j = 0; j < v.cols; ++j)
        for (index_t i = 0; i < v.rows; ++i) {
            const double ax = std::abs(v(i, j));
            if (ax == 0.0) continue;
            if (scale < ax) {
                ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
                scale = ax;
            } else {
                ssq += (ax / scale) * (ax / scale);
            }
        }
    return scale * std::sqrt(ssq);
}

void mirror_lower(MatrixView<cplx> m) {
    if (m.rows != m.cols) throw DimensionMismatch("mirror_lower: matrix is not square");
    for (index_t j = 0; j < m.cols; ++j) {
        m(j, j) = cplx(m(j, j).real(), 0.0);
        for (index_t i = j + 1; i < m.rows; ++i) m(j, i) = std::conj(m(i, j));
    }
}

DenseHermitian DenseHermitian::from_lower(Matrix<cplx> m) {
    if (!m.square()) throw DimensionMismatch("Hermitian matrix must be square");
    if (m.rows() < 1) throw InvalidArgument("Hermitian matrix must have n >= 1");
    mirror_lower(m.view());
    return DenseHermitian(std::move(m));
}

DenseHermitian symmetrize(ConstMatrixView<cplx> m) {
    if (m.rows != m.cols) throw DimensionMismatch("symmetrize: matrix is not square");
    Matrix<cplx> out(m.rows, m.cols);
    for (index_t j = 0; j < m.cols; ++j)
        for (index_t i = j; i < m.rows; ++i) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return DenseHermitian::from_lower(std::move(out));
}

TriangularFactor::TriangularFactor(Matrix<cplx> lower) : data_(std::move(lower)) {
    if (!data_.square()) throw DimensionMismatch("triangular factor must be square");
    for (index_t j = 0; j < data_.cols(); ++j) {
        const cplx diag = data_(j, j);
        if (!(diag.real() > 0.0) || !std::isfinite(diag.real()))
            throw InvalidArgument("triangular factor needs a positive real diagonal");
        data_(j, j) = cplx(diag.real(), 0.0);
        for (index_t i = 0; i < j; ++i) data_(i, j) = 0.0;
    }
}

BandHermitian::BandHermitian(index_t n, index_t b) : n_(n), b_(b), data_(b + 1, n) {
    if (n < 1) throw InvalidArgument("band matrix needs n >= 1");
    if (b < 0 || b >= n) throw InvalidArgument("band matrix half-bandwidth out of range");
}

cplx BandHermitian::operator()(index_t i, index_t j) const {
    if (i >= j) return i - j <= b_ ? at(i, j) : cplx{};
    return j - i <= b_ ? std::conj(at(j, i)) : cplx{};
}

Matrix<cplx> BandHermitian::to_dense() const {
    Matrix<cplx> m(n_, n_);
    for (index_t j = 0; j < n_; ++j)
        for (index_t i = j; i < std::min(n_, j + b_ + 1); ++i) {
            m(i, j) = at(i, j);
            if (i != j) m(j, i) = std::conj(at(i, j));
        }
    return m;
}

BandHermitian band_from_dense(const DenseHermitian& a, index_t b) {
    const index_t n = a.n();
    if (b < 1 || b >= n) throw InvalidArgument("band_from_dense: need 1 <= b < n");
    const double threshold = 64.0 * std::numeric_limits<double>::epsilon() * a.frobenius_norm();
    BandHermitian band(n, b);
    for (index_t j = 0; j < n; ++j) {
        for (index_t i = j; i < n; ++i) {
            if (i - j <= b) {
                band.at(i, j) = a(i, j);
            } else if (std::abs(a(i, j)) > threshold) {
                throw BandViolation(i, j, std::abs(a(i, j)), threshold);
            }
        }
    }
    return band;
}

Matrix<double> RealSymTridiagonal::to_dense() const {
    const index_t n = this->n();
    Matrix<double> m(n, n);
    for (index_t i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    for (index_t i = 0; i + 1 < n; ++i) {
        m(i + 1, i) = e[static_cast<std::size_t>(i)];
        m(i, i + 1) = e[static_cast<std::size_t>(i)];
    }
    return m;
}

void RealSymTridiagonal::validate() const {
    if (d.empty()) throw InvalidArgument("tridiagonal matrix needs n >= 1");
    if (e.size() + 1 != d.size()) throw DimensionMismatch("tridiagonal off-diagonal must have n - 1 entries");
    auto finite = [](double x) { return std::isfinite(x); };
    if (!std::all_of(d.begin(), d.end(), finite) || !std::all_of(e.begin(), e.end(), finite))
        throw InvalidArgument("tridiagonal entries must be finite");
}

std::string to_string(ReductionStage s) {
    switch (s) {
        case ReductionStage::OneStage: return "one-stage";
        case ReductionStage::BandReduction: return "band-reduction";
        case ReductionStage::BulgeChase: return "bulge-chase";
    }
    return "unknown";
}

ReflectorSet::ReflectorSet(ReductionStage stage, index_t n) : stage_(stage), n_(n) {}

void ReflectorSet::push(index_t offset, const cplx* tail, index_t tail_length, cplx tau) {
    if (offset < 0 || tail_length < 0 || offset + tail_length + 1 > n_)
        throw DimensionMismatch("reflector support exceeds matrix dimension");
    offsets_.push_back(offset);
    lengths_.push_back(tail_length + 1);
    starts_.push_back(packed_.size());
    packed_.insert(packed_.end(), tail, tail + tail_length);
    taus_.push_back(tau);
}

void ReflectorSet::close_group() {
    const index_t end = count();
    if (end > group_start_) groups_.push_back({group_start_, end - group_start_});
    group_start_ = end;
}

cplx ReflectorSet::vector_entry(index_t k, index_t row) const {
    const index_t off = offset(k);
    if (row < off || row >= off + length(k)) return {};
    if (row == off) return 1.0;
    return tail(k)[row - off - 1];
}

void ReflectorSet::set_phase(std::vector<cplx> phase) {
    if (static_cast<index_t>(phase.size()) != n_) throw DimensionMismatch("phase diagonal must have n entries");
    phase_ = std::move(phase);
}

void ReflectorSet::validate() const {
    constexpr double tol = 1e3 * std::numeric_limits<double>::epsilon();
    for (const cplx& p : phase_)
        if (std::abs(std::abs(p) - 1.0) > tol) throw InvalidArgument("phase entry is not unit modulus");
    index_t expected = 0;
    for (const Group& g : groups_) {
        if (g.first != expected || g.count <= 0) throw InvalidArgument("reflector groups do not partition the set");
        expected += g.count;
    }
    if (expected != count()) throw InvalidArgument("reflector groups do not cover every reflector");
    for (index_t k = 0; k < count(); ++k)
        if (offset(k) + length(k) > n_) throw DimensionMismatch("reflector support exceeds matrix dimension");
}

std::string to_string(SelectionMode m) {
    switch (m) {
        case SelectionMode::All: return "all";
        case SelectionMode::IndexRange: return "range";
        case SelectionMode::Fraction: return "fraction";
    }
    return "unknown";
}

ResolvedSelection EigenSelection::resolve(index_t n) const {
    if (n < 1) throw InvalidSelection("selection needs n >= 1");
    switch (mode) {
        case SelectionMode::All:
            return {1, n};
        case SelectionMode::IndexRange:
            if (il < 1 || il > iu || iu > n)
                throw InvalidSelection("index range [" + std::to_string(il) + ", " + std::to_string(iu) +
                                       "] invalid for n = " + std::to_string(n));
            return {il, iu};
        case SelectionMode::Fraction: {
            if (!(frac > 0.0) || frac > 1.0) throw InvalidSelection("fraction must lie in (0, 1]");
            // Products such as 0.3 * 10 land one ulp above the integer.
            const double scaled = frac * static_cast<double>(n);
            const auto upper = static_cast<index_t>(std::ceil(scaled * (1.0 - 1e-12)));
            return {1, std::clamp<index_t>(upper, 1, n)};
        }
    }
    throw InvalidSelection("unknown selection mode");
}

}  // namespace hermeig
