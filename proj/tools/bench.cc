#include "bench.hh"

#include <hermeig/cholesky.hh>
#include <hermeig/jacobi.hh>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <tuple>

namespace hermeig::bench {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Eigenvalues of L^{-1} A L^{-H}, formed by plain substitution and solved by Jacobi.
std::vector<double> oracle_values(const Pencil& p) {
    const index_t n = p.a.n();
    ReferenceBackend scratch;
    const TriangularFactor l = cholesky_factor(p.b, 64, scratch);
    auto lower_solve = [&](Matrix<cplx>& x) {
        for (index_t c = 0; c < n; ++c)
            for (index_t i = 0; i < n; ++i) {
                cplx s = x(i, c);
                for (index_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
                x(i, c) = s / l(i, i);
            }
    };
    Matrix<cplx> c = p.a.matrix();
    lower_solve(c);                        // L^{-1} A
    Matrix<cplx> ch = conj_transpose(c.cview());
    lower_solve(ch);                       // L^{-1} (L^{-1} A)^H = (L^{-1} A L^{-H})^H
    return jacobi_eigen(symmetrize(ch.cview())).values;
}

double column_norm(ConstMatrixView<cplx> m, index_t j) {
    double s = 0.0;
    for (index_t i = 0; i < m.rows; ++i) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

RunRecord run_case(const CaseSpec& spec, int repeat, const Plan& plan, const std::string& backend_name) {
    RunRecord rec;
    rec.n = spec.n;
    rec.method = spec.method;
    rec.sel = spec.sel;
    rec.seed = plan.seed + static_cast<std::uint64_t>(repeat);
    rec.repeat = repeat;
    rec.config = plan.solver;

    const Pencil p = generate_pencil(spec.n, rec.seed, spec.cond_b);
    auto backend = make_backend(backend_name);
    const EigenDecomposition r = solve_generalized(p.a, p.b, spec.sel, spec.method, plan.solver, *backend);
    rec.timings = r.meta.timings;
    rec.level2_flops = r.meta.counts.level2_flops;
    rec.level3_flops = r.meta.counts.level3_flops;

    const index_t n = spec.n;
    const index_t m = static_cast<index_t>(r.values.size());
    if (m > 0) {
        rec.value_sum = 0.0;
        for (double v : r.values) rec.value_sum += v;
        rec.value_min = r.values.front();
        rec.value_max = r.values.back();
    }

    // Checks run on a separate backend so the solve's counters stay clean.
    ReferenceBackend check;
    bool finite = std::all_of(r.values.begin(), r.values.end(), [](double v) { return std::isfinite(v); });
    if (r.vectors) {
        const Matrix<cplx>& x = *r.vectors;
        Matrix<cplx> ax(n, m), bx(n, m);
        check.multiply_accumulate(1.0, Op::NoTrans, p.a.view(), Op::NoTrans, x.cview(), 0.0, ax.view());
        check.multiply_accumulate(1.0, Op::NoTrans, p.b.view(), Op::NoTrans, x.cview(), 0.0, bx.view());
        const double na = p.a.frobenius_norm();
        const double nb = p.b.frobenius_norm();
        for (index_t j = 0; j < m; ++j) {
            const double lambda = r.values[static_cast<std::size_t>(j)];
            for (index_t i = 0; i < n; ++i) ax(i, j) -= lambda * bx(i, j);
            rec.max_residual = std::max(rec.max_residual, column_norm(ax.cview(), j) / (na + std::abs(lambda) * nb));
        }
        Matrix<cplx> g(m, m);
        check.multiply_accumulate(1.0, Op::ConjTrans, x.cview(), Op::NoTrans, bx.cview(), 0.0, g.view());
        for (index_t j = 0; j < m; ++j) g(j, j) -= 1.0;
        rec.orth_norm = frobenius_norm(g.cview());
        finite = finite && std::isfinite(rec.max_residual) && std::isfinite(rec.orth_norm);
    }

    const double tol_res = plan.solver.residual_factor * static_cast<double>(n) * eps;
    const double tol_orth = plan.solver.orthogonality_factor * static_cast<double>(n) * eps;
    std::vector<std::string> failures;
    if (!finite) failures.push_back("non-finite output");
    if (rec.max_residual > tol_res) failures.push_back(fmt::format("residual {:.3e} > {:.3e}", rec.max_residual, tol_res));
    if (rec.orth_norm > tol_orth) failures.push_back(fmt::format("orthogonality {:.3e} > {:.3e}", rec.orth_norm, tol_orth));
    if (n <= plan.oracle_max_n) {
        const std::vector<double> ref = oracle_values(p);
        double scale = 0.0;
        for (double v : ref) scale = std::max(scale, std::abs(v));
        double err = 0.0;
        const index_t first = r.meta.selection.il - 1;
        for (index_t j = 0; j < m; ++j)
            err = std::max(err, std::abs(r.values[static_cast<std::size_t>(j)] - ref[static_cast<std::size_t>(first + j)]));
        rec.oracle_error = scale > 0.0 ? err / scale : err;
        if (*rec.oracle_error > plan.oracle_tolerance)
            failures.push_back(fmt::format("oracle error {:.3e} > {:.3e}", *rec.oracle_error, plan.oracle_tolerance));
    }
    rec.pass = failures.empty();
    for (const auto& f : failures) rec.failure += (rec.failure.empty() ? "" : "; ") + f;
    return rec;
}

std::vector<RunRecord> run_suite(const Plan& plan, const SuiteOptions& options) {
    struct Job {
        const CaseSpec* spec;
        int repeat;
    };
    std::vector<Job> jobs;
    for (const CaseSpec& c : plan.cases)
        for (int rep = 0; rep < c.repeats; ++rep) jobs.push_back({&c, rep});

    std::vector<RunRecord> out(jobs.size());
    const auto width = static_cast<std::size_t>(std::max(1, options.jobs));
    for (std::size_t start = 0; start < jobs.size(); start += width) {
        const std::size_t stop = std::min(jobs.size(), start + width);
        if (width == 1) {
            out[start] = run_case(*jobs[start].spec, jobs[start].repeat, plan, options.backend);
            continue;
        }
        std::vector<std::future<RunRecord>> running;
        for (std::size_t i = start; i < stop; ++i)
            running.push_back(std::async(std::launch::async, [&, i] {
                return run_case(*jobs[i].spec, jobs[i].repeat, plan, options.backend);
            }));
        for (std::size_t i = start; i < stop; ++i) out[i] = running[i - start].get();
    }
    return out;
}

namespace {

std::string num(double x) { return fmt::format("{}", x); }

double backtransform_time(const StepTimings& t) { return t.backtransform + t.backtransform_generalized; }

struct CaseKey {
    index_t n;
    std::string method;
    std::string sel;
    auto operator<=>(const CaseKey&) const = default;
};

CaseKey key_of(const RunRecord& r) { return {r.n, to_string(r.method), selection_label(r.sel)}; }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << "schema_version,n,method,sel_mode,sel_frac,seed,t_total_s,t_cholesky_s,t_transform_s,t_tridiag_s,"
           "t_dc_s,t_backtransform_s,level2_flops,level3_flops,max_residual,orth_norm,pass\n";
    for (const RunRecord& r : records) {
        const double frac = r.sel.mode == SelectionMode::Fraction ? r.sel.frac
                             : r.sel.mode == SelectionMode::All   ? 1.0
                                                                  : static_cast<double>(r.sel.iu - r.sel.il + 1) /
                                                                        static_cast<double>(r.n);
        fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_schema_version, r.n,
                   to_string(r.method), to_string(r.sel.mode), num(frac), r.seed, num(r.timings.total),
                   num(r.timings.cholesky), num(r.timings.transform), num(r.timings.tridiag), num(r.timings.dc),
                   num(backtransform_time(r.timings)), r.level2_flops, r.level3_flops, num(r.max_residual),
                   num(r.orth_norm), r.pass ? "true" : "false");
    }
}

void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    std::map<CaseKey, std::vector<const RunRecord*>> groups;
    for (const RunRecord& r : records) groups[key_of(r)].push_back(&r);
    out << "schema_version,n,method,selection,repeats,median_t_total_s,median_t_tridiag_s,median_t_dc_s,"
           "median_t_backtransform_s,level2_flops,level3_flops,max_residual,max_orth_norm,all_pass\n";
    for (const auto& [key, rs] : groups) {
        std::vector<double> tot, tri, dc, bt;
        double res = 0.0, orth = 0.0;
        bool pass = true;
        for (const RunRecord* r : rs) {
            tot.push_back(r->timings.total);
            tri.push_back(r->timings.tridiag);
            dc.push_back(r->timings.dc);
            bt.push_back(backtransform_time(r->timings));
            res = std::max(res, r->max_residual);
            orth = std::max(orth, r->orth_norm);
            pass = pass && r->pass;
        }
        fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_schema_version, key.n, key.method, key.sel,
                   rs.size(), num(median(tot)), num(median(tri)), num(median(dc)), num(median(bt)),
                   rs.front()->level2_flops, rs.front()->level3_flops, num(res), num(orth), pass ? "true" : "false");
    }
}

void write_runs_json(std::ostream& out, const std::vector<RunRecord>& records) {
    nlohmann::json runs = nlohmann::json::array();
    for (const RunRecord& r : records) {
        nlohmann::json j{{"n", r.n},
                         {"method", to_string(r.method)},
                         {"selection", selection_label(r.sel)},
                         {"seed", r.seed},
                         {"repeat", r.repeat},
                         {"config", r.config},
                         {"timings",
                          {{"total", r.timings.total},
                           {"cholesky", r.timings.cholesky},
                           {"transform", r.timings.transform},
                           {"tridiag", r.timings.tridiag},
                           {"dc", r.timings.dc},
                           {"backtransform", r.timings.backtransform},
                           {"backtransform_generalized", r.timings.backtransform_generalized}}},
                         {"level2_flops", r.level2_flops},
                         {"level3_flops", r.level3_flops},
                         {"max_residual", r.max_residual},
                         {"orth_norm", r.orth_norm},
                         {"eigenvalue_checksum", {{"sum", r.value_sum}, {"min", r.value_min}, {"max", r.value_max}}},
                         {"pass", r.pass}};
        if (r.oracle_error) j["oracle_error"] = *r.oracle_error;
        if (!r.failure.empty()) j["failure"] = r.failure;
        runs.push_back(std::move(j));
    }
    out << nlohmann::json{{"schema_version", csv_schema_version}, {"runs", runs}}.dump(2) << "\n";
}

void write_step_plot(std::ostream& out, const std::vector<RunRecord>& records) {
    struct Bar {
        CaseKey key;
        double steps[5];
    };
    static const char* names[5] = {"cholesky", "transform", "tridiag", "dc", "backtransform"};
    static const char* colors[5] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f"};

    std::map<CaseKey, std::vector<const RunRecord*>> groups;
    for (const RunRecord& r : records) groups[key_of(r)].push_back(&r);
    std::vector<Bar> bars;
    double tmax = 0.0;
    for (const auto& [key, rs] : groups) {
        Bar b{key, {}};
        std::vector<double> v[5];
        for (const RunRecord* r : rs) {
            v[0].push_back(r->timings.cholesky);
            v[1].push_back(r->timings.transform);
            v[2].push_back(r->timings.tridiag);
            v[3].push_back(r->timings.dc);
            v[4].push_back(backtransform_time(r->timings));
        }
        double total = 0.0;
        for (int s = 0; s < 5; ++s) total += b.steps[s] = median(v[s]);
        tmax = std::max(tmax, total);
        bars.push_back(b);
    }

    const double bar_w = 28.0, gap = 10.0, left = 70.0, top = 30.0, height = 300.0;
    const double width = left + 20.0 + static_cast<double>(bars.size()) * (bar_w + gap) + 140.0;
    const double total_h = top + height + 120.0;
    if (tmax <= 0.0) tmax = 1.0;
    fmt::print(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
                    "font-family=\"sans-serif\" font-size=\"11\">\n", width, total_h);
    fmt::print(out, "<text x=\"{:.0f}\" y=\"18\" font-size=\"13\">Median time per step (s)</text>\n", left);
    fmt::print(out, "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n", left, top,
               top + height);
    for (int t = 0; t <= 4; ++t) {
        const double y = top + height - height * t / 4.0;
        fmt::print(out, "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.3g}</text>\n", left - 4, y + 4,
                   tmax * t / 4.0);
    }
    double x = left + 10.0;
    for (const Bar& b : bars) {
        double y = top + height;
        for (int s = 0; s < 5; ++s) {
            const double h = height * b.steps[s] / tmax;
            y -= h;
            fmt::print(out, "<rect x=\"{:.1f}\" y=\"{:.2f}\" width=\"{:.1f}\" height=\"{:.2f}\" fill=\"{}\"/>\n", x, y,
                       bar_w, h, colors[s]);
        }
        fmt::print(out,
                   "<text transform=\"translate({:.1f},{:.1f}) rotate(60)\">n={} {} {}</text>\n", x + 4,
                   top + height + 8, b.key.n, b.key.method, b.key.sel);
        x += bar_w + gap;
    }
    for (int s = 0; s < 5; ++s) {
        const double ly = top + 14.0 * s;
        fmt::print(out, "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"10\" height=\"10\" fill=\"{}\"/>\n", x + 10, ly,
                   colors[s]);
        fmt::print(out, "<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", x + 24, ly + 9, names[s]);
    }
    out << "</svg>\n";
}

void write_outputs(const std::filesystem::path& dir, const std::vector<RunRecord>& records) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream f(dir / name);
        if (!f) throw FormatError("cannot write '" + (dir / name).string() + "'");
        return f;
    };
    {
        auto f = open("runs.csv");
        write_runs_csv(f, records);
    }
    {
        auto f = open("summary.csv");
        write_summary_csv(f, records);
    }
    {
        auto f = open("runs.json");
        write_runs_json(f, records);
    }
    {
        auto f = open("steps.svg");
        write_step_plot(f, records);
    }
}

}  // namespace hermeig::bench
