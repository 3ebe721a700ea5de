#pragma once

#include <hermeig/backend.hh>
#include <hermeig/matrix.hh>

#include <optional>
#include <vector>

namespace hermeig {

struct TridiagSplit {
    RealSymTridiagonal t1;
    RealSymTridiagonal t2;
    double rho = 0.0;
    index_t cut = 0;
};

/// T = blockdiag(T1, T2) + rho v v^T with v = e_{cut-1} + e_cut.
TridiagSplit split_and_glue(const RealSymTridiagonal& t, index_t cut);

struct GivensRotation {
    index_t i = 0;  // column kept out of the secular problem
    index_t j = 0;
    double c = 1.0;
    double s = 0.0;
};

/// Rank-one modified diagonal problem diag(d) + rho u u^T. Indices refer to
/// the concatenated child eigenbasis.
struct MergeProblem {
    std::vector<double> d;
    std::vector<double> u;
    double rho = 0.0;
    std::vector<index_t> perm;      // indices sorted by ascending d
    std::vector<index_t> active;    // filled by deflate, ascending d
    std::vector<index_t> deflated;  // filled by deflate
    /// Column rotations applied in order: x_i' = c x_i + s x_j, x_j' = c x_j - s x_i.
    std::vector<GivensRotation> rotations;
};

MergeProblem make_merge_problem(std::vector<double> d, std::vector<double> u, double rho);

/// Deflation tolerance for `mp`: 8 eps max(||d||_inf, |rho| ||u||^2).
double deflation_tolerance(const MergeProblem& mp);

/// Removes entries with |rho u_i| <= tol and rotates nearly equal poles
/// together so that one of them can be removed as well.
MergeProblem deflate(MergeProblem mp, double tol);

struct SecularRoot {
    double lambda = 0.0;
    index_t origin = 0;   // pole the root is measured from
    double offset = 0.0;  // lambda = d[origin] + offset, computed directly
};

/// Root `i` of 1 + rho sum u_j^2 / (d_j - lambda) for strictly ascending d
/// and nonzero u. Throws ConvergenceFailure after 100 iterations.
SecularRoot secular_solve(const std::vector<double>& d, const std::vector<double>& u, double rho, index_t i);

/// Eigenvectors of diag(d) + rho u u^T from its roots, using the recomputed
/// u of Gu and Eisenstat so that the columns stay orthogonal. Only the
/// columns listed in `columns` (indices into `roots`) are formed.
Matrix<double> secular_vectors(const std::vector<double>& d, const std::vector<double>& u, double rho,
                               const std::vector<SecularRoot>& roots, const std::vector<index_t>& columns);

struct MergedEigen {
    std::vector<double> values;    // all, ascending
    std::optional<Matrix<double>> vectors;
};

/// One merge step: given the children's eigenpairs, returns the eigenpairs of
/// blockdiag(T1, T2) + rho v v^T. Vectors are formed only for the sorted
/// positions [first, last) when `want_vectors` is set; the
/// blockdiag(Z1, Z2) Q product goes through `backend`.
MergedEigen merge_vectors(const std::vector<double>& values1, ConstMatrixView<double> z1,
                          const std::vector<double>& values2, ConstMatrixView<double> z2, double rho,
                          bool want_vectors, index_t first, index_t last, Backend& backend);

struct DcOptions {
    index_t base_size = 25;
    bool parallel = true;
};

struct TridiagEigen {
    std::vector<double> values;            // every eigenvalue, ascending
    ResolvedSelection selection;
    std::optional<Matrix<double>> vectors;  // selected columns only
};

TridiagEigen dc_solve(const RealSymTridiagonal& t, const EigenSelection& sel, Backend& backend,
                      const DcOptions& options = {});

}  // namespace hermeig
