// Small fixed pencil with eigenvalues computed offline (LAPACK zhegv).
#pragma once

#include <hermeig/matrix.hh>

namespace hermeig::testing {

inline DenseHermitian fixture_a() {
    Matrix<cplx> m(4, 4);
    const cplx rows[4][4] = {{4, cplx(1, -2), cplx(0, 0.5), -1},
                             {cplx(1, 2), 3, cplx(2, -1), 0.25},
                             {cplx(0, -0.5), cplx(2, 1), -1, cplx(0, 1.5)},
                             {-1, 0.25, cplx(0, -1.5), 2}};
    for (index_t i = 0; i < 4; ++i)
        for (index_t j = 0; j < 4; ++j) m(i, j) = rows[i][j];
    return DenseHermitian::from_lower(m);
}

inline DenseHermitian fixture_b() {
    Matrix<cplx> m(4, 4);
    const cplx rows[4][4] = {{5, cplx(0, 1), 0.5, 0},
                             {cplx(0, -1), 4, cplx(1, -1), 0.2},
                             {0.5, cplx(1, 1), 6, cplx(0, 1)},
                             {0, 0.2, cplx(0, -1), 3}};
    for (index_t i = 0; i < 4; ++i)
        for (index_t j = 0; j < 4; ++j) m(i, j) = rows[i][j];
    return DenseHermitian::from_lower(m);
}

inline const double fixture_generalized_values[4] = {-0.6554286526673031, 0.204829563577315, 0.7609974244880061,
                                                     1.6621673129109629};
inline const double fixture_a_values[4] = {-2.572638699752814, 0.874857714492906, 3.6831984061654164,
                                           6.0145825790944905};

// Lower Cholesky factor of fixture_b().
inline Matrix<cplx> fixture_b_cholesky() {
    Matrix<cplx> l(4, 4);
    l(0, 0) = 2.23606797749979;
    l(1, 0) = cplx(0, -0.4472135954999579);
    l(1, 1) = 1.9493588689617927;
    l(2, 0) = 0.22360679774997896;
    l(2, 1) = cplx(0.5129891760425771, 0.4616902584383194);
    l(2, 2) = 2.3395906074624073;
    l(3, 1) = 0.10259783520851543;
    l(3, 2) = cplx(-0.02249606353329238, -0.407178749952592);
    l(3, 3) = 1.6802300666644068;
    return l;
}

}  // namespace hermeig::testing
