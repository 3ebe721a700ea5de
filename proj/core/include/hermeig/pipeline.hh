#pragma once

#include <hermeig/backend.hh>
#include <hermeig/matrix.hh>

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hermeig {

enum class Method { OneStage, TwoStage };

std::string to_string(Method m);
/// Accepts "one-stage" and "two-stage"; throws InvalidArgument otherwise.
Method method_from_string(const std::string& s);

struct SolverConfig {
    index_t cholesky_block = 64;
    index_t transform_block = 64;
    index_t panel_width = 8;
    index_t band_width = 64;
    index_t sweep_group = 0;  // 0: default for the band width
    index_t dc_base_size = 25;
    bool dc_parallel = true;
    double residual_factor = 100.0;     // tol_res = residual_factor * n * eps
    double orthogonality_factor = 100.0;  // tol_orth = orthogonality_factor * n * eps

    void validate() const;
};

void to_json(nlohmann::json& j, const SolverConfig& c);
void from_json(const nlohmann::json& j, SolverConfig& c);

struct StepTimings {
    double cholesky = 0.0;
    double transform = 0.0;
    double tridiag = 0.0;
    double dc = 0.0;
    double backtransform = 0.0;              // reflector application
    double backtransform_generalized = 0.0;  // L^{-H} solve
    double total = 0.0;
};

struct StepCounts {
    BackendOpCounts cholesky;
    BackendOpCounts transform;
    BackendOpCounts tridiag;
    BackendOpCounts dc;
    BackendOpCounts backtransform;
    BackendOpCounts backtransform_generalized;
};

struct DecompositionMeta {
    Method method = Method::OneStage;
    ResolvedSelection selection;
    index_t band_width = 0;  // effective b on the two-stage path
    BackendOpCounts counts;  // whole solve
    StepCounts step_counts;
    StepTimings timings;
};

struct EigenDecomposition {
    std::vector<double> values;           // selected, ascending
    std::optional<Matrix<cplx>> vectors;  // one column per value
    DecompositionMeta meta;
};

/// A' x = lambda x.
EigenDecomposition solve_standard(const DenseHermitian& a, const EigenSelection& sel, Method method,
                                  const SolverConfig& config, Backend& backend);

/// A x = lambda B x with B positive definite.
EigenDecomposition solve_generalized(const DenseHermitian& a, const DenseHermitian& b, const EigenSelection& sel,
                                     Method method, const SolverConfig& config, Backend& backend);

}  // namespace hermeig
