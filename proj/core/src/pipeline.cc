#include <hermeig/backtransform.hh>
#include <hermeig/cholesky.hh>
#include <hermeig/dc_solver.hh>
#include <hermeig/pipeline.hh>
#include <hermeig/std_transform.hh>
#include <hermeig/tridiag.hh>

#include <nlohmann/json.hpp>

#include <chrono>

namespace hermeig {

std::string to_string(Method m) { return m == Method::OneStage ? "one-stage" : "two-stage"; }

Method method_from_string(const std::string& s) {
    if (s == "one-stage") return Method::OneStage;
    if (s == "two-stage") return Method::TwoStage;
    throw InvalidArgument("unknown method '" + s + "' (expected one-stage or two-stage)");
}

void SolverConfig::validate() const {
    if (cholesky_block < 1 || transform_block < 1 || panel_width < 1 || band_width < 1 || sweep_group < 0 ||
        dc_base_size < 1)
        throw InvalidArgument("solver config: block sizes must be positive");
    if (!(residual_factor > 0.0) || !(orthogonality_factor > 0.0))
        throw InvalidArgument("solver config: tolerance factors must be positive");
}

void to_json(nlohmann::json& j, const SolverConfig& c) {
    j = nlohmann::json{{"cholesky_block", c.cholesky_block},
                       {"transform_block", c.transform_block},
                       {"panel_width", c.panel_width},
                       {"band_width", c.band_width},
                       {"sweep_group", c.sweep_group},
                       {"dc_base_size", c.dc_base_size},
                       {"dc_parallel", c.dc_parallel},
                       {"residual_factor", c.residual_factor},
                       {"orthogonality_factor", c.orthogonality_factor}};
}

void from_json(const nlohmann::json& j, SolverConfig& c) {
    SolverConfig d;
    c.cholesky_block = j.value("cholesky_block", d.cholesky_block);
    c.transform_block = j.value("transform_block", d.transform_block);
    c.panel_width = j.value("panel_width", d.panel_width);
    c.band_width = j.value("band_width", d.band_width);
    c.sweep_group = j.value("sweep_group", d.sweep_group);
    c.dc_base_size = j.value("dc_base_size", d.dc_base_size);
    c.dc_parallel = j.value("dc_parallel", d.dc_parallel);
    c.residual_factor = j.value("residual_factor", d.residual_factor);
    c.orthogonality_factor = j.value("orthogonality_factor", d.orthogonality_factor);
}

namespace {

using Clock = std::chrono::steady_clock;

// Times one step and attributes its backend counters.
template <typename F>
auto measured(Backend& backend, double& seconds, BackendOpCounts& counts, F&& f) {
    const BackendOpCounts before = backend.counts();
    const auto start = Clock::now();
    auto result = f();
    seconds = std::chrono::duration<double>(Clock::now() - start).count();
    counts = backend.counts().since(before);
    return result;
}

EigenDecomposition standard_steps(const DenseHermitian& a, const EigenSelection& sel, Method method,
                                  const SolverConfig& config, Backend& backend, DecompositionMeta meta) {
    const index_t n = a.n();
    meta.method = method;
    meta.selection = sel.resolve(n);

    const bool two_stage = method == Method::TwoStage && n > 1;
    const index_t b = std::min(config.band_width, n - 1);
    TridiagResult tri = measured(backend, meta.timings.tridiag, meta.step_counts.tridiag, [&] {
        return two_stage ? tridiagonalize_two_stage(a, b, backend, config.sweep_group)
                         : tridiagonalize_one_stage(a, config.panel_width, backend);
    });
    meta.band_width = two_stage ? b : 0;

    const DcOptions dc_opts{config.dc_base_size, config.dc_parallel};
    TridiagEigen te = measured(backend, meta.timings.dc, meta.step_counts.dc,
                               [&] { return dc_solve(tri.t, sel, backend, dc_opts); });

    EigenDecomposition out;
    out.values.assign(te.values.begin() + (meta.selection.il - 1), te.values.begin() + meta.selection.iu);
    if (te.vectors) {
        out.vectors = measured(backend, meta.timings.backtransform, meta.step_counts.backtransform,
                               [&] { return backtransform_standard(tri, te.vectors->cview(), backend); });
    }
    out.meta = std::move(meta);
    return out;
}

}  // namespace

EigenDecomposition solve_standard(const DenseHermitian& a, const EigenSelection& sel, Method method,
                                  const SolverConfig& config, Backend& backend) {
    config.validate();
    const BackendOpCounts before = backend.counts();
    const auto start = Clock::now();
    EigenDecomposition out = standard_steps(a, sel, method, config, backend, {});
    out.meta.timings.total = std::chrono::duration<double>(Clock::now() - start).count();
    out.meta.counts = backend.counts().since(before);
    return out;
}

EigenDecomposition solve_generalized(const DenseHermitian& a, const DenseHermitian& b, const EigenSelection& sel,
                                     Method method, const SolverConfig& config, Backend& backend) {
    config.validate();
    if (a.n() != b.n()) throw DimensionMismatch("solve_generalized: A and B differ in size");
    sel.resolve(a.n());
    const BackendOpCounts before = backend.counts();
    const auto start = Clock::now();

    DecompositionMeta meta;
    const TriangularFactor l = measured(backend, meta.timings.cholesky, meta.step_counts.cholesky,
                                        [&] { return cholesky_factor(b, config.cholesky_block, backend); });
    const DenseHermitian ap = measured(backend, meta.timings.transform, meta.step_counts.transform, [&] {
        return transform_to_standard(a, l, config.transform_block, backend);
    });
    EigenDecomposition out = standard_steps(ap, sel, method, config, backend, std::move(meta));
    if (out.vectors) {
        out.vectors = measured(backend, out.meta.timings.backtransform_generalized,
                               out.meta.step_counts.backtransform_generalized,
                               [&] { return backtransform_generalized(l, out.vectors->cview(), backend); });
    }
    out.meta.timings.total = std::chrono::duration<double>(Clock::now() - start).count();
    out.meta.counts = backend.counts().since(before);
    return out;
}

}  // namespace hermeig
