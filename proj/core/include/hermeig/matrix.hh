#pragma once

#include <hermeig/errors.hh>

#include <cassert>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace hermeig {

using cplx = std::complex<double>;
using index_t = std::ptrdiff_t;

// Non-owning column-major view. `T` may be const-qualified.
template <typename T>
struct MatrixView {
    T* ptr = nullptr;
    index_t rows = 0;
    index_t cols = 0;
    index_t ld = 0;

    MatrixView() = default;
    MatrixView(T* p, index_t r, index_t c, index_t leading) : ptr(p), rows(r), cols(c), ld(leading) {}

    template <typename U, typename = std::enable_if_t<std::is_same_v<const U, T> && !std::is_same_v<U, T>>>
    MatrixView(const MatrixView<U>& other) : ptr(other.ptr), rows(other.rows), cols(other.cols), ld(other.ld) {}

    T& operator()(index_t i, index_t j) const {
        assert(i >= 0 && i < rows && j >= 0 && j < cols);
        return ptr[i + j * ld];
    }

    MatrixView block(index_t i, index_t j, index_t r, index_t c) const {
        assert(i >= 0 && j >= 0 && r >= 0 && c >= 0 && i + r <= rows && j + c <= cols);
        return MatrixView(ptr + i + j * ld, r, c, ld);
    }

    MatrixView column(index_t j) const { return block(0, j, rows, 1); }
    T* col_ptr(index_t j) const { return ptr + j * ld; }
    bool empty() const { return rows == 0 || cols == 0; }
};

template <typename T>
using ConstMatrixView = MatrixView<const T>;

// Owning column-major dense matrix.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(index_t rows, index_t cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), T{}) {
        if (rows < 0 || cols < 0) throw InvalidArgument("negative matrix dimension");
    }

    static Matrix identity(index_t n) {
        Matrix m(n, n);
        for (index_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    index_t rows() const { return rows_; }
    index_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(index_t i, index_t j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(i + j * rows_)];
    }
    const T& operator()(index_t i, index_t j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(i + j * rows_)];
    }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }
    std::vector<T>& storage() { return data_; }
    const std::vector<T>& storage() const { return data_; }

    MatrixView<T> view() { return {data_.data(), rows_, cols_, rows_}; }
    ConstMatrixView<T> view() const { return {data_.data(), rows_, cols_, rows_}; }
    ConstMatrixView<T> cview() const { return view(); }

    bool operator==(const Matrix& other) const = default;

private:
    index_t rows_ = 0;
    index_t cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
Matrix<T> to_matrix(ConstMatrixView<T> v) {
    Matrix<T> m(v.rows, v.cols);
    for (index_t j = 0; j < v.cols; ++j)
        for (index_t i = 0; i < v.rows; ++i) m(i, j) = v(i, j);
    return m;
}

Matrix<cplx> complexify(ConstMatrixView<double> v);
Matrix<cplx> conj_transpose(ConstMatrixView<cplx> v);
double frobenius_norm(ConstMatrixView<cplx> v);
double frobenius_norm(ConstMatrixView<double> v);

/// Full-storage Hermitian matrix. The lower triangle is authoritative; the
/// strictly upper triangle is kept as its conjugate mirror so that callers may
/// read either triangle.
class DenseHermitian {
public:
    DenseHermitian() = default;

    /// Takes the lower triangle of `m`, mirrors it and drops the imaginary
    /// part of the diagonal.
    static DenseHermitian from_lower(Matrix<cplx> m);

    index_t n() const { return data_.rows(); }
    const cplx& operator()(index_t i, index_t j) const { return data_(i, j); }
    ConstMatrixView<cplx> view() const { return data_.view(); }
    const Matrix<cplx>& matrix() const { return data_; }
    Matrix<cplx> release() && { return std::move(data_); }
    double frobenius_norm() const { return hermeig::frobenius_norm(data_.view()); }

private:
    explicit DenseHermitian(Matrix<cplx> m) : data_(std::move(m)) {}
    Matrix<cplx> data_;
};

/// (M + M^H) / 2 with an exactly real diagonal.
DenseHermitian symmetrize(ConstMatrixView<cplx> m);

/// Copies the lower triangle of `m` into the upper one, conjugated, and
/// zeroes the imaginary part of the diagonal.
void mirror_lower(MatrixView<cplx> m);

/// Lower-triangular Cholesky factor with a strictly positive real diagonal.
/// Entries above the diagonal are stored as zero and never read.
class TriangularFactor {
public:
    TriangularFactor() = default;
    explicit TriangularFactor(Matrix<cplx> lower);

    index_t n() const { return data_.rows(); }
    const cplx& operator()(index_t i, index_t j) const { return data_(i, j); }
    ConstMatrixView<cplx> view() const { return data_.view(); }
    const Matrix<cplx>& matrix() const { return data_; }

private:
    Matrix<cplx> data_;
};

/// Hermitian band matrix in packed lower storage: entry (i, j) with
/// 0 <= i - j <= b lives at data(i - j, j).
class BandHermitian {
public:
    BandHermitian() = default;
    BandHermitian(index_t n, index_t b);

    index_t n() const { return n_; }
    index_t bandwidth() const { return b_; }

    cplx& at(index_t i, index_t j) { return data_(i - j, j); }
    const cplx& at(index_t i, index_t j) const { return data_(i - j, j); }

    /// Any entry; zero outside the band, mirrored above the diagonal.
    cplx operator()(index_t i, index_t j) const;

    Matrix<cplx> to_dense() const;
    const Matrix<cplx>& packed() const { return data_; }

private:
    index_t n_ = 0;
    index_t b_ = 0;
    Matrix<cplx> data_;
};

/// Packs `a` into band storage of half-bandwidth `b`. Throws BandViolation if
/// an out-of-band entry exceeds 64 eps ||A||_F.
BandHermitian band_from_dense(const DenseHermitian& a, index_t b);

struct RealSymTridiagonal {
    std::vector<double> d;
    std::vector<double> e;

    index_t n() const { return static_cast<index_t>(d.size()); }
    Matrix<double> to_dense() const;
    void validate() const;
};

enum class ReductionStage { OneStage, BandReduction, BulgeChase };

std::string to_string(ReductionStage s);

/// Compact store of Householder reflectors H_k = I - tau_k v_k v_k^H. The
/// represented unitary is Q = H_0 H_1 ... H_{count-1}, in storage order,
/// optionally followed by the phase diagonal: Q_total = Q * diag(phase).
///
/// Each v_k has an implicit unit entry at row offset(k) followed by the
/// stored tail. Reflectors are partitioned into consecutive application
/// groups, each applied as one blocked I - V T V^H update.
class ReflectorSet {
public:
    struct Group {
        index_t first = 0;
        index_t count = 0;
    };

    ReflectorSet() = default;
    ReflectorSet(ReductionStage stage, index_t n);

    ReductionStage stage() const { return stage_; }
    index_t n() const { return n_; }
    index_t count() const { return static_cast<index_t>(taus_.size()); }

    /// Appends a reflector whose leading (implicit) unit entry sits at
    /// `offset`, followed by `tail`.
    void push(index_t offset, const cplx* tail, index_t tail_length, cplx tau);
    /// Closes the current group with every reflector pushed since the last
    /// call.
    void close_group();

    index_t offset(index_t k) const { return offsets_[static_cast<std::size_t>(k)]; }
    index_t length(index_t k) const { return lengths_[static_cast<std::size_t>(k)]; }
    cplx tau(index_t k) const { return taus_[static_cast<std::size_t>(k)]; }
    /// Tail entries (length(k) - 1 of them).
    const cplx* tail(index_t k) const { return packed_.data() + starts_[static_cast<std::size_t>(k)]; }
    /// Entry r of v_k in absolute row coordinates; zero outside its support.
    cplx vector_entry(index_t k, index_t row) const;

    const std::vector<Group>& groups() const { return groups_; }
    const std::vector<cplx>& taus() const { return taus_; }

    bool has_phase() const { return !phase_.empty(); }
    const std::vector<cplx>& phase() const { return phase_; }
    void set_phase(std::vector<cplx> phase);

    /// Checks the storage invariants (unit-modulus phase, supports within n,
    /// groups partitioning the reflectors).
    void validate() const;

private:
    ReductionStage stage_ = ReductionStage::OneStage;
    index_t n_ = 0;
    std::vector<cplx> packed_;
    std::vector<index_t> offsets_;
    std::vector<index_t> lengths_;
    std::vector<std::size_t> starts_;
    std::vector<cplx> taus_;
    std::vector<Group> groups_;
    index_t group_start_ = 0;
    std::vector<cplx> phase_;
};

enum class SelectionMode { All, IndexRange, Fraction };

std::string to_string(SelectionMode m);

struct ResolvedSelection {
    index_t il = 1;  // 1-based, inclusive
    index_t iu = 1;
    index_t count() const { return iu - il + 1; }
};

struct EigenSelection {
    SelectionMode mode = SelectionMode::All;
    index_t il = 1;
    index_t iu = 1;
    double frac = 1.0;
    bool vectors = true;

    static EigenSelection all(bool vectors = true) { return {SelectionMode::All, 1, 1, 1.0, vectors}; }
    static EigenSelection range(index_t il, index_t iu, bool vectors = true) {
        return {SelectionMode::IndexRange, il, iu, 1.0, vectors};
    }
    static EigenSelection fraction(double frac, bool vectors = true) {
        return {SelectionMode::Fraction, 1, 1, frac, vectors};
    }

    /// Throws InvalidSelection if the selection is not valid for `n`.
    ResolvedSelection resolve(index_t n) const;
};

}  // namespace hermeig
