#include "bench.hh"

#include <hermeig/matrix_io.hh>
#include <hermeig/pipeline.hh>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>

using namespace hermeig;

namespace {

int run_bench(const std::string& plan_path, const std::string& out_dir, const std::string& backend, long seed,
              bool large, int jobs) {
    bench::Plan plan = plan_path.empty() ? bench::default_plan(large) : bench::load_plan(plan_path);
    if (seed >= 0) plan.seed = static_cast<std::uint64_t>(seed);
    make_backend(backend);  // fail early on unknown names

    bench::SuiteOptions options;
    options.backend = backend;
    options.jobs = jobs;
    const auto records = bench::run_suite(plan, options);
    bench::write_outputs(out_dir, records);

    int failed = 0;
    for (const auto& r : records) {
        fmt::print("n={:<5} {:<9} {:<13} seed={} total={:.3f}s residual={:.2e} orth={:.2e} {}\n", r.n,
                   to_string(r.method), bench::selection_label(r.sel), r.seed, r.timings.total, r.max_residual,
                   r.orth_norm, r.pass ? "pass" : "FAIL (" + r.failure + ")");
        failed += r.pass ? 0 : 1;
    }
    fmt::print("{} runs, {} failed; results in {}\n", records.size(), failed, out_dir);
    return failed == 0 ? 0 : 1;
}

DenseHermitian load_hermitian(const std::string& path) {
    HeigMatrix m = read_matrix_file(path);
    return symmetrize(m.data.cview());
}

int run_solve(const std::string& input, const std::string& input_b, const std::string& method_name,
              const std::string& sel_text, const std::string& backend_name, bool metric_only) {
    const DenseHermitian a = load_hermitian(input);
    const EigenSelection sel = bench::parse_selection(sel_text);
    const Method method = method_from_string(method_name);
    auto backend = make_backend(backend_name);
    const SolverConfig config;

    const bool generalized = !input_b.empty();
    std::optional<DenseHermitian> b;
    if (generalized) {
        b = load_hermitian(input_b);
        if (b->n() != a.n()) throw DimensionMismatch("A and B differ in size");
    }
    const EigenDecomposition r = generalized ? solve_generalized(a, *b, sel, method, config, *backend)
                                             : solve_standard(a, sel, method, config, *backend);

    const index_t n = a.n();
    const index_t m = static_cast<index_t>(r.values.size());
    double residual = 0.0;
    double orth = 0.0;
    if (r.vectors) {
        ReferenceBackend check;
        const Matrix<cplx>& x = *r.vectors;
        Matrix<cplx> ax(n, m), bx = x;
        check.multiply_accumulate(1.0, Op::NoTrans, a.view(), Op::NoTrans, x.cview(), 0.0, ax.view());
        if (generalized)
            check.multiply_accumulate(1.0, Op::NoTrans, b->view(), Op::NoTrans, x.cview(), 0.0, bx.view());
        const double na = a.frobenius_norm();
        const double nb = generalized ? b->frobenius_norm() : std::sqrt(static_cast<double>(n));
        for (index_t j = 0; j < m; ++j) {
            const double lambda = r.values[static_cast<std::size_t>(j)];
            double s = 0.0;
            for (index_t i = 0; i < n; ++i) s += std::norm(ax(i, j) - lambda * bx(i, j));
            residual = std::max(residual, std::sqrt(s) / (na + std::abs(lambda) * nb));
        }
        Matrix<cplx> g(m, m);
        check.multiply_accumulate(1.0, Op::ConjTrans, x.cview(), Op::NoTrans, bx.cview(), 0.0, g.view());
        for (index_t j = 0; j < m; ++j) g(j, j) -= 1.0;
        orth = frobenius_norm(g.cview());
    }

    nlohmann::json out{{"n", n},
                       {"method", to_string(method)},
                       {"selection", bench::selection_label(sel)},
                       {"generalized", generalized},
                       {"count", m},
                       {"max_residual", residual},
                       {"orth_norm", orth},
                       {"level2_flops", r.meta.counts.level2_flops},
                       {"level3_flops", r.meta.counts.level3_flops},
                       {"timings",
                        {{"total", r.meta.timings.total},
                         {"cholesky", r.meta.timings.cholesky},
                         {"transform", r.meta.timings.transform},
                         {"tridiag", r.meta.timings.tridiag},
                         {"dc", r.meta.timings.dc},
                         {"backtransform",
                          r.meta.timings.backtransform + r.meta.timings.backtransform_generalized}}}};
    if (!metric_only) out["values"] = r.values;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_generate(index_t n, std::uint64_t seed, double cond_b, const std::string& out_a, const std::string& out_b) {
    const bench::Pencil p = bench::generate_pencil(n, seed, cond_b);
    write_heig(out_a, p.a.view(), HeigKind::Hermitian);
    if (!out_b.empty()) write_heig(out_b, p.b.view(), HeigKind::HermitianPositiveDefinite);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Hermitian-definite eigensolver benchmark"};
    app.require_subcommand(1);

    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark plan and write CSV, JSON and SVG results");
    std::string plan_path, out_dir = "results", backend = "reference";
    long seed = -1;
    bool large = false;
    int jobs = 1;
    bench_cmd->add_option("--plan", plan_path, "TOML plan file (default: built-in desk-scale plan)")
        ->check(CLI::ExistingFile);
    bench_cmd->add_option("--out", out_dir, "Output directory");
    bench_cmd->add_option("--backend", backend, "Compute backend")->capture_default_str();
    bench_cmd->add_option("--seed", seed, "Base seed (overrides the plan)");
    bench_cmd->add_flag("--large", large, "Add n = 8000 to the built-in plan");
    bench_cmd->add_option("--jobs", jobs, "Run cases concurrently (correctness runs only)")
        ->check(CLI::PositiveNumber);

    auto* solve_cmd = app.add_subcommand("solve", "Solve one problem read from a HEIG or text matrix file");
    std::string input, input_b, method = "two-stage", sel = "all", solve_backend = "reference";
    bool metric_only = false;
    solve_cmd->add_option("--input", input, "Matrix A")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--input-b", input_b, "Matrix B (generalized problem)")->check(CLI::ExistingFile);
    solve_cmd->add_option("--method", method, "one-stage or two-stage")->capture_default_str();
    solve_cmd->add_option("--select", sel, "all, fraction:F or range:IL:IU")->capture_default_str();
    solve_cmd->add_option("--backend", solve_backend, "Compute backend")->capture_default_str();
    solve_cmd->add_flag("--metric-only", metric_only, "Print metrics without eigenvalues");

    auto* gen_cmd = app.add_subcommand("generate", "Write a random pencil in HEIG format");
    index_t gen_n = 64;
    std::uint64_t gen_seed = 42;
    double cond_b = 100.0;
    std::string out_a, out_b;
    gen_cmd->add_option("-n", gen_n, "Dimension")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen_seed, "Seed");
    gen_cmd->add_option("--cond-b", cond_b, "Condition number of B");
    gen_cmd->add_option("--out-a", out_a, "Output file for A")->required();
    gen_cmd->add_option("--out-b", out_b, "Output file for B");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*bench_cmd) return run_bench(plan_path, out_dir, backend, seed, large, jobs);
        if (*solve_cmd) return run_solve(input, input_b, method, sel, solve_backend, metric_only);
        if (*gen_cmd) return run_generate(gen_n, gen_seed, cond_b, out_a, out_b);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "hermeig: %s\n", e.what());
        return 2;
    }
    return 0;
}
