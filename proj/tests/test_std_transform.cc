#include "fixtures.hh"
#include "oracles.hh"

#include <hermeig/cholesky.hh>
#include <hermeig/jacobi.hh>
#include <hermeig/std_transform.hh>

#include <gtest/gtest.h>

using namespace hermeig;
using namespace hermeig::testing;

namespace {

DenseHermitian definite(index_t n, std::uint64_t seed) {
    Matrix<cplx> m = random_complex(n, n, seed);
    Matrix<cplx> g = naive_product(adjoint(m.cview()).cview(), m.cview());
    for (index_t i = 0; i < n; ++i) g(i, i) += static_cast<double>(n);
    return symmetrize(g.cview());
}

}  // namespace

TEST(TransformToStandard, IdentityFactor) {
    ReferenceBackend be;
    DenseHermitian a = random_hermitian(7, 41);
    DenseHermitian ap = transform_to_standard(a, TriangularFactor(Matrix<cplx>::identity(7)), 3, be);
    EXPECT_LE(max_abs_diff(ap.view(), a.view()), 1e-15 * a.frobenius_norm());
}

TEST(TransformToStandard, DiagonalScaling) {
    ReferenceBackend be;
    Matrix<cplx> two(5, 5);
    for (index_t i = 0; i < 5; ++i) two(i, i) = 2.0;
    DenseHermitian ap =
        transform_to_standard(DenseHermitian::from_lower(Matrix<cplx>::identity(5)), TriangularFactor(two), 2, be);
    Matrix<cplx> expect(5, 5);
    for (index_t i = 0; i < 5; ++i) expect(i, i) = 0.25;
    EXPECT_EQ(ap.matrix(), expect);
}

TEST(TransformToStandard, FixtureSpectrum) {
    ReferenceBackend be;
    TriangularFactor l = cholesky_factor(fixture_b(), 64, be);
    for (index_t block : {1, 2, 3, 64}) {
        DenseHermitian ap = transform_to_standard(fixture_a(), l, block, be);
        auto jac = jacobi_eigen(ap);
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(jac.values[static_cast<std::size_t>(i)], fixture_generalized_values[i], 1e-13);
    }
}

TEST(TransformToStandard, RandomMatchesExplicitOracle) {
    ReferenceBackend be;
    const index_t n = 12;
    DenseHermitian a = random_hermitian(n, 42);
    DenseHermitian b = definite(n, 43);
    TriangularFactor l = cholesky_factor(b, 4, be);
    DenseHermitian ap = transform_to_standard(a, l, 5, be);
    Matrix<cplx> oracle = explicit_standard_form(a.view(), l.view());
    auto got = jacobi_eigen(ap);
    auto want = jacobi_eigen(oracle.cview());
    const double scale = std::max(std::abs(want.values.front()), std::abs(want.values.back()));
    for (std::size_t i = 0; i < got.values.size(); ++i) EXPECT_NEAR(got.values[i], want.values[i], 1e-12 * scale);
}

TEST(TransformToStandard, InverseConsistencyAndInputUntouched) {
    ReferenceBackend be;
    const index_t n = 40;
    DenseHermitian a = random_hermitian(n, 44);
    const Matrix<cplx> a_copy = a.matrix();
    DenseHermitian b = definite(n, 45);
    TriangularFactor l = cholesky_factor(b, 8, be);
    DenseHermitian ap = transform_to_standard(a, l, 16, be);
    EXPECT_EQ(a.matrix(), a_copy);
    for (index_t j = 0; j < n; ++j) EXPECT_EQ(ap(j, j).imag(), 0.0);
    Matrix<cplx> back = naive_product(naive_product(l.view(), ap.view()).cview(), adjoint(l.view()).cview());
    EXPECT_LE(diff_frobenius(back.cview(), a.view()), 50.0 * n * eps * a.frobenius_norm());
}

TEST(TransformToStandard, DimensionMismatch) {
    ReferenceBackend be;
    EXPECT_THROW(transform_to_standard(random_hermitian(3, 1), TriangularFactor(Matrix<cplx>::identity(4)), 2, be),
                 DimensionMismatch);
}

TEST(BacktransformGeneralized, IdentityFactor) {
    ReferenceBackend be;
    Matrix<cplx> y = random_complex(4, 2, 46);
    Matrix<cplx> x = backtransform_generalized(TriangularFactor(Matrix<cplx>::identity(4)), y.cview(), be);
    EXPECT_EQ(x, y);
}

TEST(BacktransformGeneralized, Scalar) {
    ReferenceBackend be;
    Matrix<cplx> two(1, 1);
    two(0, 0) = 2.0;
    Matrix<cplx> y(1, 1);
    y(0, 0) = 1.0;
    Matrix<cplx> x = backtransform_generalized(TriangularFactor(two), y.cview(), be);
    EXPECT_EQ(x(0, 0), cplx(0.5));
}

TEST(BacktransformGeneralized, RandomResiduals) {
    ReferenceBackend be;
    const index_t n = 12;
    DenseHermitian a = random_hermitian(n, 47);
    DenseHermitian b = definite(n, 48);
    TriangularFactor l = cholesky_factor(b, 64, be);
    DenseHermitian ap = transform_to_standard(a, l, 64, be);
    auto jac = jacobi_eigen(ap);
    Matrix<cplx> x = backtransform_generalized(l, jac.vectors.cview(), be);
    Matrix<cplx> ax = naive_product(a.view(), x.cview());
    Matrix<cplx> bx = naive_product(b.view(), x.cview());
    for (index_t j = 0; j < n; ++j) {
        double r = 0.0;
        for (index_t i = 0; i < n; ++i)
            r += std::norm(ax(i, j) - jac.values[static_cast<std::size_t>(j)] * bx(i, j));
        EXPECT_LE(std::sqrt(r), 1e-12 * a.frobenius_norm());
    }
}
