#pragma once

#include <hermeig/matrix.hh>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hermeig {

enum class Op { NoTrans, Trans, ConjTrans };
enum class Side { Left, Right };

/// Hint on trailing-update calls. `Allowed` lets an implementation return
/// before the output is materialized; the caller must then `fence()` before
/// reading it. The reference implementation always completes synchronously.
enum class Overlap { Synchronous, Allowed };

/// Nominal flop counters. Complex multiply-accumulate counts as 8 real flops.
struct BackendOpCounts {
    std::uint64_t level2_flops = 0;
    std::uint64_t level3_flops = 0;
    std::map<std::string, std::uint64_t> calls;

    std::uint64_t total_flops() const { return level2_flops + level3_flops; }
    double level2_fraction() const;

    /// Counter delta since `earlier`; counters never decrease within a run.
    BackendOpCounts since(const BackendOpCounts& earlier) const;
    BackendOpCounts& operator+=(const BackendOpCounts& other);
};

/// Compute backend for every matrix-matrix (and the instrumented
/// matrix-vector) kernel of the solver. Public entry points validate shapes
/// and update the counters atomically, then dispatch to the implementation.
class Backend {
public:
    virtual ~Backend() = default;

    virtual std::string name() const = 0;

    /// C <- alpha op(A) op(B) + beta C.
    void multiply_accumulate(cplx alpha, Op op_a, ConstMatrixView<cplx> a, Op op_b, ConstMatrixView<cplx> b,
                             cplx beta, MatrixView<cplx> c, Overlap hint = Overlap::Synchronous);
    /// Real variant, used for the tridiagonal eigenvector updates.
    void multiply_accumulate(double alpha, Op op_a, ConstMatrixView<double> a, Op op_b, ConstMatrixView<double> b,
                             double beta, MatrixView<double> c, Overlap hint = Overlap::Synchronous);

    /// C <- alpha V V^H + beta C on the lower triangle; the upper triangle is
    /// refreshed as its mirror.
    void hermitian_rank_update(double alpha, ConstMatrixView<cplx> v, double beta, MatrixView<cplx> c,
                               Overlap hint = Overlap::Synchronous);

    /// C <- alpha V W^H + conj(alpha) W V^H + beta C on the lower triangle,
    /// mirrored like hermitian_rank_update.
    void hermitian_rank2k_update(cplx alpha, ConstMatrixView<cplx> v, ConstMatrixView<cplx> w, double beta,
                                 MatrixView<cplx> c, Overlap hint = Overlap::Synchronous);

    /// Overwrites X with op(L)^{-1} X (Left) or X op(L)^{-1} (Right) for a
    /// lower-triangular, non-unit L. Only the lower triangle of L is read.
    void triangular_solve_multi(Side side, Op op, ConstMatrixView<cplx> l, MatrixView<cplx> x);
    void triangular_solve_multi(const TriangularFactor& l, Side side, Op op, MatrixView<cplx> x) {
        triangular_solve_multi(side, op, l.view(), x);
    }

    /// y <- alpha op(A) x + beta y.
    void matvec_accumulate(cplx alpha, Op op, ConstMatrixView<cplx> a, std::span<const cplx> x, cplx beta,
                           std::span<cplx> y);

    /// A <- A + alpha x y^H.
    void rank1_update(cplx alpha, std::span<const cplx> x, std::span<const cplx> y, MatrixView<cplx> a);

    /// Waits for every operation issued with Overlap::Allowed.
    virtual void fence() {}

    BackendOpCounts counts() const;
    void reset_counts();

protected:
    virtual void do_gemm(cplx alpha, Op op_a, ConstMatrixView<cplx> a, Op op_b, ConstMatrixView<cplx> b, cplx beta,
                         MatrixView<cplx> c, Overlap hint) = 0;
    virtual void do_gemm(double alpha, Op op_a, ConstMatrixView<double> a, Op op_b, ConstMatrixView<double> b,
                         double beta, MatrixView<double> c, Overlap hint) = 0;
    virtual void do_herk(double alpha, ConstMatrixView<cplx> v, double beta, MatrixView<cplx> c, Overlap hint) = 0;
    virtual void do_her2k(cplx alpha, ConstMatrixView<cplx> v, ConstMatrixView<cplx> w, double beta,
                          MatrixView<cplx> c, Overlap hint) = 0;
    virtual void do_trsm(Side side, Op op, ConstMatrixView<cplx> l, MatrixView<cplx> x) = 0;
    virtual void do_gemv(cplx alpha, Op op, ConstMatrixView<cplx> a, std::span<const cplx> x, cplx beta,
                         std::span<cplx> y) = 0;
    virtual void do_ger(cplx alpha, std::span<const cplx> x, std::span<const cplx> y, MatrixView<cplx> a) = 0;

private:
    void record(const char* op, std::uint64_t level2, std::uint64_t level3);

    mutable std::mutex mutex_;
    BackendOpCounts counts_;
};

/// Host implementation backed by CBLAS.
class ReferenceBackend final : public Backend {
public:
    std::string name() const override { return "reference"; }

protected:
    void do_gemm(cplx alpha, Op op_a, ConstMatrixView<cplx> a, Op op_b, ConstMatrixView<cplx> b, cplx beta,
                 MatrixView<cplx> c, Overlap hint) override;
    void do_gemm(double alpha, Op op_a, ConstMatrixView<double> a, Op op_b, ConstMatrixView<double> b, double beta,
                 MatrixView<double> c, Overlap hint) override;
    void do_herk(double alpha, ConstMatrixView<cplx> v, double beta, MatrixView<cplx> c, Overlap hint) override;
    void do_her2k(cplx alpha, ConstMatrixView<cplx> v, ConstMatrixView<cplx> w, double beta, MatrixView<cplx> c,
                  Overlap hint) override;
    void do_trsm(Side side, Op op, ConstMatrixView<cplx> l, MatrixView<cplx> x) override;
    void do_gemv(cplx alpha, Op op, ConstMatrixView<cplx> a, std::span<const cplx> x, cplx beta,
                 std::span<cplx> y) override;
    void do_ger(cplx alpha, std::span<const cplx> x, std::span<const cplx> y, MatrixView<cplx> a) override;
};

/// Plain loop implementation with a fixed summation order. Slow; exists so
/// that the conformance suite always has a second implementation to run.
class LoopBackend final : public Backend {
public:
    std::string name() const override { return "loops"; }

protected:
    void do_gemm(cplx alpha, Op op_a, ConstMatrixView<cplx> a, Op op_b, ConstMatrixView<cplx> b, cplx beta,
                 MatrixView<cplx> c, Overlap hint) override;
    void do_gemm(double alpha, Op op_a, ConstMatrixView<double> a, Op op_b, ConstMatrixView<double> b, double beta,
                 MatrixView<double> c, Overlap hint) override;
    void do_herk(double alpha, ConstMatrixView<cplx> v, double beta, MatrixView<cplx> c, Overlap hint) override;
    void do_her2k(cplx alpha, ConstMatrixView<cplx> v, ConstMatrixView<cplx> w, double beta, MatrixView<cplx> c,
                  Overlap hint) override;
    void do_trsm(Side side, Op op, ConstMatrixView<cplx> l, MatrixView<cplx> x) override;
    void do_gemv(cplx alpha, Op op, ConstMatrixView<cplx> a, std::span<const cplx> x, cplx beta,
                 std::span<cplx> y) override;
    void do_ger(cplx alpha, std::span<const cplx> x, std::span<const cplx> y, MatrixView<cplx> a) override;
};

using BackendFactory = std::function<std::unique_ptr<Backend>()>;

/// Registers a factory under `name`, replacing any previous entry.
void register_backend(const std::string& name, BackendFactory factory);
/// Throws InvalidArgument for unknown names.
std::unique_ptr<Backend> make_backend(std::string_view name);
std::vector<std::string> backend_names();

}  // namespace hermeig
