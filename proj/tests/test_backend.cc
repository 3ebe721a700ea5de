// Conformance suite: every registered backend runs the same cases.
#include "oracles.hh"

#include <hermeig/backend.hh>

#include <gtest/gtest.h>

using namespace hermeig;
using namespace hermeig::testing;

class BackendConformance : public ::testing::TestWithParam<std::string> {
protected:
    void SetUp() override { backend = make_backend(GetParam()); }
    std::unique_ptr<Backend> backend;
};

TEST_P(BackendConformance, GemmIdentityTimesX) {
    Matrix<cplx> id = Matrix<cplx>::identity(3);
    Matrix<cplx> x = random_complex(3, 4, 1);
    Matrix<cplx> c(3, 4);
    backend->multiply_accumulate(1.0, Op::NoTrans, id.cview(), Op::NoTrans, x.cview(), 0.0, c.view());
    EXPECT_EQ(c, x);
    EXPECT_EQ(backend->counts().level3_flops, 8u * 3 * 4 * 3);
}

TEST_P(BackendConformance, GemmZeroAlphaLeavesC) {
    Matrix<cplx> a = random_complex(3, 3, 2);
    Matrix<cplx> c = random_complex(3, 3, 3);
    Matrix<cplx> before = c;
    backend->multiply_accumulate(0.0, Op::NoTrans, a.cview(), Op::NoTrans, a.cview(), 1.0, c.view());
    EXPECT_EQ(c, before);
}

TEST_P(BackendConformance, GemmMatchesTripleLoop) {
    Matrix<cplx> a = random_complex(4, 4, 4);
    Matrix<cplx> b = random_complex(4, 4, 5);
    for (Op oa : {Op::NoTrans, Op::Trans, Op::ConjTrans}) {
        Matrix<cplx> c(4, 4);
        backend->multiply_accumulate(1.0, oa, a.cview(), Op::NoTrans, b.cview(), 0.0, c.view());
        Matrix<cplx> opa = oa == Op::NoTrans ? a : Matrix<cplx>(4, 4);
        if (oa != Op::NoTrans)
            for (index_t i = 0; i < 4; ++i)
                for (index_t j = 0; j < 4; ++j) opa(i, j) = oa == Op::Trans ? a(j, i) : std::conj(a(j, i));
        Matrix<cplx> ref = naive_product(opa.cview(), b.cview());
        EXPECT_LE(max_abs_diff(c.cview(), ref.cview()), 1e-14 * frobenius_norm(ref.cview()));
    }
}

TEST_P(BackendConformance, RealGemmCounts) {
    Matrix<double> a(3, 2), b(2, 5), c(3, 5);
    a(0, 0) = 1;
    b(0, 0) = 2;
    backend->multiply_accumulate(1.0, Op::NoTrans, a.cview(), Op::NoTrans, b.cview(), 0.0, c.view());
    EXPECT_EQ(c(0, 0), 2.0);
    EXPECT_EQ(backend->counts().level3_flops, 2u * 3 * 5 * 2);
}

TEST_P(BackendConformance, DimensionMismatchThrows) {
    Matrix<cplx> a(3, 2), b(3, 2), c(3, 2);
    EXPECT_THROW(backend->multiply_accumulate(1.0, Op::NoTrans, a.cview(), Op::NoTrans, b.cview(), 0.0, c.view()),
                 DimensionMismatch);
    std::vector<cplx> x(3), y(2);
    Matrix<cplx> m(2, 2);
    EXPECT_THROW(backend->matvec_accumulate(1.0, Op::NoTrans, m.cview(), x, 0.0, y), DimensionMismatch);
}

TEST_P(BackendConformance, HerkZeroAlpha) {
    Matrix<cplx> v = random_complex(4, 2, 6);
    Matrix<cplx> c = symmetrize(random_complex(4, 4, 7).cview()).matrix();
    Matrix<cplx> before = c;
    backend->hermitian_rank_update(0.0, v.cview(), 1.0, c.view());
    EXPECT_LE(max_abs_diff(c.cview(), before.cview()), 0.0);
}

TEST_P(BackendConformance, HerkUnitColumn) {
    Matrix<cplx> v(3, 1);
    v(0, 0) = 1.0;
    Matrix<cplx> c = random_complex(3, 3, 8);
    backend->hermitian_rank_update(1.0, v.cview(), 0.0, c.view());
    Matrix<cplx> expect(3, 3);
    expect(0, 0) = 1.0;
    EXPECT_EQ(c, expect);
}

TEST_P(BackendConformance, HerkMatchesGemmThenSymmetrize) {
    Matrix<cplx> v = random_complex(6, 2, 9);
    Matrix<cplx> c(6, 6);
    backend->hermitian_rank_update(1.0, v.cview(), 0.0, c.view());
    DenseHermitian ref = symmetrize(naive_product(v.cview(), adjoint(v.cview()).cview()).cview());
    EXPECT_LE(max_abs_diff(c.cview(), ref.view()), 1e-14 * ref.frobenius_norm());
    EXPECT_EQ(backend->counts().level3_flops, 4u * 6 * 6 * 2);
}

TEST_P(BackendConformance, Her2kMatchesExplicit) {
    Matrix<cplx> v = random_complex(5, 2, 10);
    Matrix<cplx> w = random_complex(5, 2, 11);
    Matrix<cplx> c = symmetrize(random_complex(5, 5, 12).cview()).matrix();
    Matrix<cplx> c0 = c;
    const cplx alpha(0.5, -1.5);
    backend->hermitian_rank2k_update(alpha, v.cview(), w.cview(), 2.0, c.view());
    Matrix<cplx> vw = naive_product(v.cview(), adjoint(w.cview()).cview());
    Matrix<cplx> wv = naive_product(w.cview(), adjoint(v.cview()).cview());
    Matrix<cplx> ref(5, 5);
    for (index_t j = 0; j < 5; ++j)
        for (index_t i = 0; i < 5; ++i) ref(i, j) = alpha * vw(i, j) + std::conj(alpha) * wv(i, j) + 2.0 * c0(i, j);
    EXPECT_LE(max_abs_diff(c.cview(), ref.cview()), 1e-13);
}

TEST_P(BackendConformance, TrsmIdentity) {
    TriangularFactor l(Matrix<cplx>::identity(3));
    Matrix<cplx> x = random_complex(3, 2, 13);
    Matrix<cplx> before = x;
    backend->triangular_solve_multi(l, Side::Left, Op::ConjTrans, x.view());
    EXPECT_EQ(x, before);
}

TEST_P(BackendConformance, TrsmScalar) {
    Matrix<cplx> two(1, 1);
    two(0, 0) = 2.0;
    TriangularFactor l(two);
    Matrix<cplx> x(1, 1);
    x(0, 0) = 4.0;
    backend->triangular_solve_multi(l, Side::Left, Op::ConjTrans, x.view());
    EXPECT_EQ(x(0, 0), cplx(2.0));
}

TEST_P(BackendConformance, TrsmResidualAllVariants) {
    Matrix<cplx> lm = random_complex(6, 6, 14);
    for (index_t j = 0; j < 6; ++j) {
        lm(j, j) = 6.0 + std::abs(lm(j, j));
        for (index_t i = 0; i < j; ++i) lm(i, j) = 0.0;
    }
    TriangularFactor l(lm);
    Matrix<cplx> lh = adjoint(lm.cview());
    for (Side side : {Side::Left, Side::Right})
        for (Op op : {Op::NoTrans, Op::ConjTrans}) {
            Matrix<cplx> b = side == Side::Left ? random_complex(6, 3, 15) : random_complex(3, 6, 15);
            Matrix<cplx> x = b;
            backend->triangular_solve_multi(l, side, op, x.view());
            const Matrix<cplx>& opl = op == Op::NoTrans ? lm : lh;
            Matrix<cplx> back = side == Side::Left ? naive_product(opl.cview(), x.cview())
                                                   : naive_product(x.cview(), opl.cview());
            EXPECT_LE(diff_frobenius(back.cview(), b.cview()), 1e-12 * frobenius_norm(b.cview()));
        }
}

TEST_P(BackendConformance, GemvIdentity) {
    Matrix<cplx> id = Matrix<cplx>::identity(3);
    std::vector<cplx> x{cplx(1, 2), cplx(3, 4), cplx(5, 6)};
    std::vector<cplx> y(3);
    backend->matvec_accumulate(1.0, Op::NoTrans, id.cview(), x, 0.0, y);
    EXPECT_EQ(y, x);
    EXPECT_EQ(backend->counts().level2_flops, 8u * 3 * 3);
}

TEST_P(BackendConformance, GemvZeroAlphaDoubles) {
    Matrix<cplx> a = random_complex(3, 3, 16);
    std::vector<cplx> x(3, cplx(1, 1));
    std::vector<cplx> y{cplx(1, -1), cplx(2, 0), cplx(0, 3)};
    backend->matvec_accumulate(0.0, Op::NoTrans, a.cview(), x, 2.0, y);
    EXPECT_EQ(y[0], cplx(2, -2));
    EXPECT_EQ(y[1], cplx(4, 0));
    EXPECT_EQ(y[2], cplx(0, 6));
}

TEST_P(BackendConformance, GemvMatchesLoop) {
    Matrix<cplx> a = random_complex(5, 3, 17);
    Matrix<cplx> x = random_complex(3, 1, 18);
    std::vector<cplx> y(5);
    backend->matvec_accumulate(1.0, Op::NoTrans, a.cview(), {x.data(), 3}, 0.0, y);
    for (index_t i = 0; i < 5; ++i) {
        cplx s{};
        for (index_t k = 0; k < 3; ++k) s += a(i, k) * x(k, 0);
        EXPECT_LE(std::abs(y[static_cast<std::size_t>(i)] - s), 1e-14 * std::abs(s));
    }
    std::vector<cplx> z(3);
    Matrix<cplx> w = random_complex(5, 1, 19);
    backend->matvec_accumulate(1.0, Op::ConjTrans, a.cview(), {w.data(), 5}, 0.0, z);
    for (index_t i = 0; i < 3; ++i) {
        cplx s{};
        for (index_t k = 0; k < 5; ++k) s += std::conj(a(k, i)) * w(k, 0);
        EXPECT_LE(std::abs(z[static_cast<std::size_t>(i)] - s), 1e-14 * std::abs(s));
    }
}

TEST_P(BackendConformance, GerMatchesOuterProduct) {
    Matrix<cplx> a = random_complex(4, 3, 20);
    Matrix<cplx> a0 = a;
    Matrix<cplx> x = random_complex(4, 1, 21);
    Matrix<cplx> y = random_complex(3, 1, 22);
    const cplx alpha(0.0, 2.0);
    backend->rank1_update(alpha, {x.data(), 4}, {y.data(), 3}, a.view());
    for (index_t j = 0; j < 3; ++j)
        for (index_t i = 0; i < 4; ++i)
            EXPECT_LE(std::abs(a(i, j) - (a0(i, j) + alpha * x(i, 0) * std::conj(y(j, 0)))), 1e-14);
    EXPECT_EQ(backend->counts().level2_flops, 8u * 4 * 3);
}

TEST_P(BackendConformance, CountersMonotoneAndSumToTotal) {
    Matrix<cplx> a = random_complex(8, 8, 23);
    Matrix<cplx> c(8, 8);
    std::vector<cplx> x(8, 1.0), y(8);
    std::uint64_t last = 0;
    for (int i = 0; i < 5; ++i) {
        backend->multiply_accumulate(1.0, Op::NoTrans, a.cview(), Op::NoTrans, a.cview(), 0.0, c.view());
        backend->matvec_accumulate(1.0, Op::NoTrans, a.cview(), x, 0.0, y);
        BackendOpCounts now = backend->counts();
        EXPECT_GT(now.total_flops(), last);
        EXPECT_EQ(now.total_flops(), now.level2_flops + now.level3_flops);
        last = now.total_flops();
    }
    backend->reset_counts();
    EXPECT_EQ(backend->counts().total_flops(), 0u);
}

TEST_P(BackendConformance, Deterministic) {
    Matrix<cplx> a = random_complex(33, 17, 24);
    Matrix<cplx> b = random_complex(17, 29, 25);
    Matrix<cplx> c1(33, 29), c2(33, 29);
    backend->multiply_accumulate(1.0, Op::NoTrans, a.cview(), Op::NoTrans, b.cview(), 0.0, c1.view());
    backend->multiply_accumulate(1.0, Op::NoTrans, a.cview(), Op::NoTrans, b.cview(), 0.0, c2.view());
    EXPECT_EQ(c1, c2);
}

INSTANTIATE_TEST_SUITE_P(AllBackends, BackendConformance, ::testing::ValuesIn(backend_names()),
                         [](const auto& info) { return info.param; });

TEST(BackendRegistry, UnknownNameThrows) { EXPECT_THROW(make_backend("no-such-backend"), InvalidArgument); }

TEST(BackendRegistry, HasReferenceAndLoops) {
    auto names = backend_names();
    EXPECT_NE(std::find(names.begin(), names.end(), "reference"), names.end());
    EXPECT_NE(std::find(names.begin(), names.end(), "loops"), names.end());
}
