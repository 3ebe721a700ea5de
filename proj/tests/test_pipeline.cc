#include "fixtures.hh"
#include "oracles.hh"

#include <hermeig/cholesky.hh>
#include <hermeig/jacobi.hh>
#include <hermeig/pipeline.hh>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

using namespace hermeig;
using namespace hermeig::testing;

namespace {

const Method both_methods[2] = {Method::OneStage, Method::TwoStage};

DenseHermitian definite(index_t n, std::uint64_t seed) {
    Matrix<cplx> m = random_complex(n, n, seed);
    Matrix<cplx> g = naive_product(adjoint(m.cview()).cview(), m.cview());
    for (index_t i = 0; i < n; ++i) g(i, i) += static_cast<double>(n);
    return symmetrize(g.cview());
}

SolverConfig small_config() {
    SolverConfig c;
    c.band_width = 8;
    c.cholesky_block = 8;
    c.transform_block = 8;
    return c;
}

void expect_generalized_quality(const DenseHermitian& a, const DenseHermitian& b, const EigenDecomposition& r) {
    const index_t n = a.n();
    const Matrix<cplx>& x = *r.vectors;
    Matrix<cplx> ax = naive_product(a.view(), x.cview());
    Matrix<cplx> bx = naive_product(b.view(), x.cview());
    const double tol = 100.0 * n * eps;
    for (index_t c = 0; c < x.cols(); ++c) {
        const double l = r.values[static_cast<std::size_t>(c)];
        double res = 0.0;
        for (index_t i = 0; i < n; ++i) res += std::norm(ax(i, c) - l * bx(i, c));
        EXPECT_LE(std::sqrt(res), tol * (a.frobenius_norm() + std::abs(l) * b.frobenius_norm()));
    }
    Matrix<cplx> g = naive_product(adjoint(x.cview()).cview(), bx.cview());
    for (index_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    EXPECT_LE(frobenius_norm(g.cview()), tol);
}

}  // namespace

TEST(Method, StringRoundTrip) {
    EXPECT_EQ(method_from_string("one-stage"), Method::OneStage);
    EXPECT_EQ(method_from_string("two-stage"), Method::TwoStage);
    EXPECT_EQ(to_string(Method::TwoStage), "two-stage");
    EXPECT_THROW(method_from_string("three-stage"), InvalidArgument);
}

TEST(SolverConfig, JsonRoundTripAndValidate) {
    SolverConfig c = small_config();
    c.dc_parallel = false;
    nlohmann::json j = c;
    SolverConfig back = j.get<SolverConfig>();
    EXPECT_EQ(back.band_width, 8);
    EXPECT_FALSE(back.dc_parallel);
    c.panel_width = 0;
    EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(SolveStandard, Identity) {
    ReferenceBackend be;
    DenseHermitian id = DenseHermitian::from_lower(Matrix<cplx>::identity(10));
    for (Method m : both_methods) {
        EigenDecomposition r = solve_standard(id, EigenSelection::all(), m, small_config(), be);
        for (double v : r.values) EXPECT_NEAR(v, 1.0, 1e-15);
        EXPECT_LE(identity_defect(r.vectors->cview()), 100.0 * 10 * eps);
    }
}

TEST(SolveStandard, DiagonalFraction) {
    ReferenceBackend be;
    Matrix<cplx> m(10, 10);
    for (index_t i = 0; i < 10; ++i) m(i, i) = static_cast<double>(10 - i);
    DenseHermitian a = DenseHermitian::from_lower(m);
    for (Method method : both_methods) {
        EigenDecomposition r = solve_standard(a, EigenSelection::fraction(0.3), method, small_config(), be);
        ASSERT_EQ(r.values.size(), 3u);
        ASSERT_EQ(r.vectors->cols(), 3);
        for (index_t c = 0; c < 3; ++c) {
            EXPECT_NEAR(r.values[static_cast<std::size_t>(c)], static_cast<double>(c + 1), 1e-14);
            // Eigenvalue c + 1 sits at row 9 - c.
            EXPECT_NEAR(std::abs((*r.vectors)(9 - c, c)), 1.0, 1e-14);
        }
    }
}

TEST(SolveStandard, FixtureValues) {
    ReferenceBackend be;
    for (Method m : both_methods) {
        EigenDecomposition r = solve_standard(fixture_a(), EigenSelection::all(), m, SolverConfig{}, be);
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.values[static_cast<std::size_t>(i)], fixture_a_values[i], 1e-13);
    }
}

TEST(SolveStandard, RandomBothMethodsAgreeWithJacobi) {
    ReferenceBackend be;
    DenseHermitian a = random_hermitian(64, 111);
    auto oracle = jacobi_eigen(a).values;
    EigenDecomposition one = solve_standard(a, EigenSelection::all(), Method::OneStage, small_config(), be);
    EigenDecomposition two = solve_standard(a, EigenSelection::all(), Method::TwoStage, small_config(), be);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        EXPECT_NEAR(one.values[i], two.values[i], 1e-12);
        EXPECT_NEAR(one.values[i], oracle[i], 1e-12);
    }
    EXPECT_EQ(two.meta.band_width, 8);
    EXPECT_EQ(one.meta.band_width, 0);
}

TEST(SolveStandard, SizeOne) {
    ReferenceBackend be;
    Matrix<cplx> m(1, 1);
    m(0, 0) = -3.0;
    for (Method method : both_methods) {
        EigenDecomposition r = solve_standard(DenseHermitian::from_lower(m), EigenSelection::all(), method,
                                              SolverConfig{}, be);
        EXPECT_EQ(r.values, std::vector<double>{-3.0});
        EXPECT_NEAR(std::abs((*r.vectors)(0, 0)), 1.0, 1e-15);
    }
}

TEST(SolveStandard, InvalidSelection) {
    ReferenceBackend be;
    EXPECT_THROW(solve_standard(random_hermitian(5, 1), EigenSelection::range(2, 7), Method::OneStage,
                                SolverConfig{}, be),
                 InvalidSelection);
}

TEST(SolveGeneralized, FixtureValues) {
    ReferenceBackend be;
    for (Method m : both_methods) {
        EigenDecomposition r = solve_generalized(fixture_a(), fixture_b(), EigenSelection::all(), m, SolverConfig{}, be);
        for (int i = 0; i < 4; ++i)
            EXPECT_NEAR(r.values[static_cast<std::size_t>(i)], fixture_generalized_values[i], 1e-13);
        expect_generalized_quality(fixture_a(), fixture_b(), r);
    }
}

TEST(SolveGeneralized, IdentityBMatchesStandard) {
    ReferenceBackend be;
    DenseHermitian a = random_hermitian(20, 112);
    DenseHermitian id = DenseHermitian::from_lower(Matrix<cplx>::identity(20));
    for (Method m : both_methods) {
        EigenDecomposition g = solve_generalized(a, id, EigenSelection::all(), m, small_config(), be);
        EigenDecomposition s = solve_standard(a, EigenSelection::all(), m, small_config(), be);
        EXPECT_EQ(g.values, s.values);
    }
}

TEST(SolveGeneralized, DiagonalPencil) {
    ReferenceBackend be;
    Matrix<cplx> am(2, 2), bm(2, 2);
    am(0, 0) = 2.0;
    am(1, 1) = 4.0;
    bm(0, 0) = 1.0;
    bm(1, 1) = 2.0;
    EigenDecomposition r = solve_generalized(DenseHermitian::from_lower(am), DenseHermitian::from_lower(bm),
                                             EigenSelection::all(), Method::OneStage, SolverConfig{}, be);
    EXPECT_NEAR(r.values[0], 2.0, 1e-15);
    EXPECT_NEAR(r.values[1], 2.0, 1e-15);
}

TEST(SolveGeneralized, FractionMatchesFullSubset) {
    ReferenceBackend be;
    const index_t n = 48;
    DenseHermitian a = random_hermitian(n, 113);
    DenseHermitian b = definite(n, 114);
    for (Method m : both_methods) {
        EigenDecomposition full = solve_generalized(a, b, EigenSelection::all(), m, small_config(), be);
        EigenDecomposition part = solve_generalized(a, b, EigenSelection::fraction(0.1), m, small_config(), be);
        ASSERT_EQ(part.values.size(), 5u);
        for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(part.values[i], full.values[i]);
        expect_generalized_quality(a, b, part);
        expect_generalized_quality(a, b, full);
        for (index_t c = 0; c < 5; ++c) {
            cplx dot{};
            for (index_t i = 0; i < n; ++i) dot += std::conj((*full.vectors)(i, c)) * (*part.vectors)(i, c);
            const cplx phase = dot / std::abs(dot);
            for (index_t i = 0; i < n; ++i)
                EXPECT_NEAR(std::abs((*full.vectors)(i, c) * phase - (*part.vectors)(i, c)), 0.0, 1e-11);
        }
    }
}

TEST(SolveGeneralized, MatchesExplicitOracle) {
    ReferenceBackend be;
    const index_t n = 48;
    DenseHermitian a = random_hermitian(n, 122);
    DenseHermitian b = definite(n, 123);
    TriangularFactor l = cholesky_factor(b, 1, be);
    auto oracle = jacobi_eigen(explicit_standard_form(a.view(), l.view()).cview()).values;
    const double tnorm = std::max(std::abs(oracle.front()), std::abs(oracle.back()));
    for (Method m : both_methods) {
        EigenDecomposition r = solve_generalized(a, b, EigenSelection::fraction(0.1), m, small_config(), be);
        for (std::size_t i = 0; i < r.values.size(); ++i) EXPECT_NEAR(r.values[i], oracle[i], 1e-12 * tnorm);
    }
}

TEST(SolveGeneralized, ShiftCovariance) {
    ReferenceBackend be;
    const index_t n = 24;
    DenseHermitian a = random_hermitian(n, 115);
    DenseHermitian b = definite(n, 116);
    const double sigma = 0.75;
    Matrix<cplx> shifted = a.matrix();
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) shifted(i, j) += sigma * b(i, j);
    EigenDecomposition r0 = solve_generalized(a, b, EigenSelection::all(), Method::TwoStage, small_config(), be);
    EigenDecomposition r1 = solve_generalized(DenseHermitian::from_lower(shifted), b, EigenSelection::all(),
                                              Method::TwoStage, small_config(), be);
    for (std::size_t i = 0; i < r0.values.size(); ++i) EXPECT_NEAR(r1.values[i], r0.values[i] + sigma, 1e-12);
    for (index_t c = 0; c < n; ++c) {
        cplx dot{};
        for (index_t i = 0; i < n; ++i)
            for (index_t k = 0; k < n; ++k) dot += std::conj((*r0.vectors)(i, c)) * b(i, k) * (*r1.vectors)(k, c);
        EXPECT_NEAR(std::abs(dot), 1.0, 1e-10);
    }
}

TEST(SolveGeneralized, NotPositiveDefinitePropagates) {
    ReferenceBackend be;
    Matrix<cplx> bm(2, 2);
    bm(0, 0) = 1.0;
    bm(1, 0) = 2.0;
    bm(1, 1) = 1.0;
    EXPECT_THROW(solve_generalized(random_hermitian(2, 117), DenseHermitian::from_lower(bm), EigenSelection::all(),
                                   Method::OneStage, SolverConfig{}, be),
                 NotPositiveDefinite);
}

TEST(SolveGeneralized, MetaRecordsSteps) {
    ReferenceBackend be;
    const index_t n = 40;
    EigenDecomposition r = solve_generalized(random_hermitian(n, 118), definite(n, 119), EigenSelection::all(),
                                             Method::TwoStage, small_config(), be);
    const DecompositionMeta& m = r.meta;
    EXPECT_EQ(m.method, Method::TwoStage);
    EXPECT_GT(m.step_counts.cholesky.total_flops(), 0u);
    EXPECT_GT(m.step_counts.transform.total_flops(), 0u);
    EXPECT_GT(m.step_counts.tridiag.total_flops(), 0u);
    EXPECT_GT(m.step_counts.backtransform.total_flops(), 0u);
    EXPECT_GT(m.step_counts.backtransform_generalized.total_flops(), 0u);
    EXPECT_GE(m.timings.total, m.timings.cholesky + m.timings.transform + m.timings.tridiag);
    std::uint64_t sum = m.step_counts.cholesky.total_flops() + m.step_counts.transform.total_flops() +
                        m.step_counts.tridiag.total_flops() + m.step_counts.dc.total_flops() +
                        m.step_counts.backtransform.total_flops() +
                        m.step_counts.backtransform_generalized.total_flops();
    EXPECT_EQ(sum, m.counts.total_flops());
}

TEST(SolveGeneralized, ValuesOnly) {
    ReferenceBackend be;
    EigenDecomposition r = solve_generalized(fixture_a(), fixture_b(), EigenSelection::all(false), Method::OneStage,
                                             SolverConfig{}, be);
    EXPECT_FALSE(r.vectors.has_value());
    EXPECT_EQ(r.values.size(), 4u);
}

TEST(SolveGeneralized, LoopBackendAgrees) {
    ReferenceBackend ref;
    LoopBackend loops;
    const index_t n = 30;
    DenseHermitian a = random_hermitian(n, 120);
    DenseHermitian b = definite(n, 121);
    for (Method m : both_methods) {
        EigenDecomposition r1 = solve_generalized(a, b, EigenSelection::all(), m, small_config(), ref);
        EigenDecomposition r2 = solve_generalized(a, b, EigenSelection::all(), m, small_config(), loops);
        for (std::size_t i = 0; i < r1.values.size(); ++i) EXPECT_NEAR(r1.values[i], r2.values[i], 1e-12);
        expect_generalized_quality(a, b, r2);
    }
}
