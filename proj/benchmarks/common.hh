#pragma once

#include <hermeig/matrix.hh>

#include <random>

namespace hermeig::benchmarks {

inline Matrix<cplx> gaussian(index_t rows, index_t cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    Matrix<cplx> m(rows, cols);
    for (auto& z : m.storage()) z = cplx(normal(gen), normal(gen));
    return m;
}

inline DenseHermitian hermitian(index_t n, std::uint64_t seed) { return symmetrize(gaussian(n, n, seed).cview()); }

inline DenseHermitian definite(index_t n, std::uint64_t seed) {
    Matrix<cplx> m = gaussian(n, n, seed);
    Matrix<cplx> g(n, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) {
            cplx s{};
            for (index_t k = 0; k < n; ++k) s += std::conj(m(k, i)) * m(k, j);
            g(i, j) = s;
        }
    for (index_t i = 0; i < n; ++i) g(i, i) += static_cast<double>(n);
    return symmetrize(g.cview());
}

}  // namespace hermeig::benchmarks
