#include "oracles.hh"

#include <bench.hh>
#include <hermeig/cholesky.hh>
#include <hermeig/jacobi.hh>

#include <gtest/gtest.h>

#include <sstream>

using namespace hermeig;
using namespace hermeig::bench;
using namespace hermeig::testing;

TEST(GeneratePencil, SizeOne) {
    Pencil p = generate_pencil(1, 5, 10.0);
    EXPECT_EQ(p.a(0, 0).imag(), 0.0);
    EXPECT_EQ(p.b(0, 0).imag(), 0.0);
    EXPECT_GT(p.b(0, 0).real(), 0.0);
}

TEST(GeneratePencil, Deterministic) {
    Pencil p = generate_pencil(17, 1234, 100.0);
    Pencil q = generate_pencil(17, 1234, 100.0);
    EXPECT_EQ(p.a.matrix(), q.a.matrix());
    EXPECT_EQ(p.b.matrix(), q.b.matrix());
    Pencil r = generate_pencil(17, 1235, 100.0);
    EXPECT_NE(p.a.matrix(), r.a.matrix());
}

TEST(GeneratePencil, ConditionNumberNearTarget) {
    ReferenceBackend be;
    Pencil p = generate_pencil(32, 7, 1e4);
    EXPECT_NO_THROW(cholesky_factor(p.b, 64, be));
    auto vals = jacobi_eigen(p.b).values;
    const double cond = vals.back() / vals.front();
    EXPECT_GT(cond, 0.5e4);
    EXPECT_LT(cond, 2e4);
}

TEST(GeneratePencil, InvalidParameters) {
    EXPECT_THROW(generate_pencil(0, 1, 10.0), InvalidArgument);
    EXPECT_THROW(generate_pencil(4, 1, 0.5), InvalidArgument);
}

TEST(JacobiOracle, Diagonal) {
    Matrix<cplx> m(3, 3);
    m(0, 0) = 2.0;
    m(1, 1) = -1.0;
    m(2, 2) = 5.0;
    auto r = jacobi_eigen(m.cview());
    EXPECT_EQ(r.values, (std::vector<double>{-1, 2, 5}));
}

TEST(JacobiOracle, TwoByTwo) {
    Matrix<cplx> m(2, 2);
    m(1, 0) = 1.0;
    m(0, 1) = 1.0;
    auto r = jacobi_eigen(m.cview());
    EXPECT_NEAR(r.values[0], -1.0, 1e-15);
    EXPECT_NEAR(r.values[1], 1.0, 1e-15);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(r.vectors(0, 0)), h, 1e-15);
    EXPECT_NEAR(std::abs(r.vectors(0, 0) + r.vectors(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.vectors(0, 1) - r.vectors(1, 1)), 0.0, 1e-15);
}

TEST(JacobiOracle, RandomReconstruction) {
    DenseHermitian a = random_hermitian(16, 131);
    auto r = jacobi_eigen(a);
    Matrix<cplx> xl = r.vectors;
    for (index_t j = 0; j < 16; ++j)
        for (index_t i = 0; i < 16; ++i) xl(i, j) *= r.values[static_cast<std::size_t>(j)];
    Matrix<cplx> back = naive_product(xl.cview(), adjoint(r.vectors.cview()).cview());
    EXPECT_LE(diff_frobenius(back.cview(), a.view()), 1e-13 * a.frobenius_norm());
    EXPECT_LE(identity_defect(r.vectors.cview()), 10.0 * 16 * eps);
}

TEST(Selection, ParseAndLabel) {
    EXPECT_EQ(parse_selection("all").mode, SelectionMode::All);
    EigenSelection f = parse_selection("fraction:0.1");
    EXPECT_EQ(f.mode, SelectionMode::Fraction);
    EXPECT_DOUBLE_EQ(f.frac, 0.1);
    EigenSelection r = parse_selection("range:3:9");
    EXPECT_EQ(r.il, 3);
    EXPECT_EQ(r.iu, 9);
    EXPECT_EQ(selection_label(r), "range:3:9");
    EXPECT_THROW(parse_selection("fraction:0.1x"), FormatError);
    EXPECT_THROW(parse_selection("lowest"), FormatError);
}

TEST(Plan, ParseCases) {
    std::istringstream in(R"(
seed = 9
repeats = 2
[solver]
band_width = 16
[tolerances]
residual_factor = 50.0
[[case]]
n = [32, 64]
methods = ["one-stage", "two-stage"]
selections = ["all", "fraction:0.1"]
[[case]]
n = 8000
methods = ["two-stage"]
repeats = 1
)");
    Plan plan = parse_plan(in);
    EXPECT_EQ(plan.seed, 9u);
    EXPECT_EQ(plan.solver.band_width, 16);
    EXPECT_EQ(plan.solver.residual_factor, 50.0);
    ASSERT_EQ(plan.cases.size(), 9u);
    EXPECT_EQ(plan.cases[0].repeats, 2);
    EXPECT_EQ(plan.cases[8].n, 8000);
    EXPECT_EQ(plan.cases[8].repeats, 1);
    EXPECT_EQ(plan.cases[8].method, Method::TwoStage);
}

TEST(Plan, Errors) {
    std::istringstream bad_type("seed = \"x\"\n");
    EXPECT_THROW(parse_plan(bad_type), FormatError);
    std::istringstream bad_method("[[case]]\nn = 4\nmethods = [\"three-stage\"]\n");
    EXPECT_THROW(parse_plan(bad_method), FormatError);
    std::istringstream syntax("[[case]\n");
    EXPECT_THROW(parse_plan(syntax), FormatError);
}

TEST(Plan, DefaultMirrorsComparisonGrid) {
    Plan p = default_plan();
    EXPECT_EQ(p.cases.size(), 12u);
    EXPECT_EQ(default_plan(true).cases.size(), 16u);
    EXPECT_EQ(default_plan(true).cases.back().n, 8000);
}

TEST(Suite, EmptyPlanHeaderOnly) {
    Plan plan;
    auto runs = run_suite(plan, {});
    EXPECT_TRUE(runs.empty());
    std::ostringstream csv;
    write_runs_csv(csv, runs);
    EXPECT_EQ(csv.str(),
              "schema_version,n,method,sel_mode,sel_frac,seed,t_total_s,t_cholesky_s,t_transform_s,t_tridiag_s,"
              "t_dc_s,t_backtransform_s,level2_flops,level3_flops,max_residual,orth_norm,pass\n");
}

TEST(Suite, SmallRunsPassAndAreDeterministic) {
    Plan plan;
    plan.solver.band_width = 8;
    for (Method m : {Method::OneStage, Method::TwoStage})
        for (const EigenSelection& s : {EigenSelection::all(), EigenSelection::fraction(0.1)}) {
            CaseSpec c;
            c.n = 40;
            c.method = m;
            c.sel = s;
            c.repeats = 2;
            plan.cases.push_back(c);
        }
    auto a = run_suite(plan, {});
    auto b = run_suite(plan, {"reference", 2});
    ASSERT_EQ(a.size(), 8u);
    ASSERT_EQ(b.size(), 8u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_TRUE(a[i].pass) << a[i].failure;
        ASSERT_TRUE(a[i].oracle_error.has_value());
        EXPECT_LE(*a[i].oracle_error, plan.oracle_tolerance);
        EXPECT_EQ(a[i].max_residual, b[i].max_residual);
        EXPECT_EQ(a[i].level3_flops, b[i].level3_flops);
        EXPECT_EQ(a[i].value_sum, b[i].value_sum);
        EXPECT_EQ(a[i].seed, plan.seed + static_cast<std::uint64_t>(a[i].repeat));
    }
}

TEST(Suite, OutputsWritten) {
    Plan plan;
    CaseSpec c;
    c.n = 12;
    c.repeats = 3;
    plan.cases.push_back(c);
    auto runs = run_suite(plan, {});
    const auto dir = std::filesystem::temp_directory_path() / "hermeig_outputs_test";
    std::filesystem::remove_all(dir);
    write_outputs(dir, runs);
    for (const char* f : {"runs.csv", "summary.csv", "runs.json", "steps.svg"})
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    std::ostringstream summary;
    write_summary_csv(summary, runs);
    const std::string text = summary.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
    std::filesystem::remove_all(dir);
}
