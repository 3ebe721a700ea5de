#include <hermeig/dc_solver.hh>
#include <hermeig/jacobi.hh>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

namespace hermeig {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

std::size_t u(index_t i) { return static_cast<std::size_t>(i); }

}  // namespace

TridiagSplit split_and_glue(const RealSymTridiagonal& t, index_t cut) {
    const index_t n = t.n();
    if (cut < 1 || cut >= n) throw InvalidArgument("split_and_glue: need 1 <= cut < n");
    TridiagSplit s;
    s.cut = cut;
    s.rho = t.e[u(cut - 1)];
    s.t1.d.assign(t.d.begin(), t.d.begin() + cut);
    s.t1.e.assign(t.e.begin(), t.e.begin() + (cut - 1));
    s.t2.d.assign(t.d.begin() + cut, t.d.end());
    s.t2.e.assign(t.e.begin() + cut, t.e.end());
    s.t1.d.back() -= s.rho;
    s.t2.d.front() -= s.rho;
    return s;
}

MergeProblem make_merge_problem(std::vector<double> d, std::vector<double> uvec, double rho) {
    if (d.size() != uvec.size()) throw DimensionMismatch("merge problem: d and u differ in length");
    MergeProblem mp;
    mp.d = std::move(d);
    mp.u = std::move(uvec);
    mp.rho = rho;
    mp.perm.resize(mp.d.size());
    std::iota(mp.perm.begin(), mp.perm.end(), index_t{0});
    std::stable_sort(mp.perm.begin(), mp.perm.end(), [&](index_t a, index_t b) { return mp.d[u(a)] < mp.d[u(b)]; });
    return mp;
}

double deflation_tolerance(const MergeProblem& mp) {
    double dmax = 0.0;
    for (double x : mp.d) dmax = std::max(dmax, std::abs(x));
    double unorm2 = 0.0;
    for (double x : mp.u) unorm2 += x * x;
    return 8.0 * eps * std::max(dmax, std::abs(mp.rho) * unorm2);
}

MergeProblem deflate(MergeProblem mp, double tol) {
    mp.active.clear();
    mp.deflated.clear();
    mp.rotations.clear();
    index_t pj = -1;
    for (index_t nj : mp.perm) {
        if (std::abs(mp.rho * mp.u[u(nj)]) <= tol) {
            mp.deflated.push_back(nj);
            continue;
        }
        if (pj < 0) {
            pj = nj;
            continue;
        }
        const double tau = std::hypot(mp.u[u(nj)], mp.u[u(pj)]);
        const double c = mp.u[u(nj)] / tau;
        const double s = -mp.u[u(pj)] / tau;
        const double t = mp.d[u(nj)] - mp.d[u(pj)];
        if (std::abs(t * c * s) <= tol) {
            mp.u[u(nj)] = tau;
            mp.u[u(pj)] = 0.0;
            mp.rotations.push_back({pj, nj, c, s});
            const double dp = mp.d[u(pj)];
            const double dn = mp.d[u(nj)];
            mp.d[u(pj)] = dp * c * c + dn * s * s;
            mp.d[u(nj)] = dp * s * s + dn * c * c;
            mp.deflated.push_back(pj);
        } else {
            mp.active.push_back(pj);
        }
        pj = nj;
    }
    if (pj >= 0) mp.active.push_back(pj);
    return mp;
}

namespace {

SecularRoot secular_positive(const std::vector<double>& d, const std::vector<double>& z, double rho, index_t i) {
    const index_t k = static_cast<index_t>(d.size());
    if (k == 1) {
        const double off = rho * z[0] * z[0];
        return {d[0] + off, 0, off};
    }
    double norm2 = 0.0;
    for (double x : z) norm2 += x * x;

    index_t origin = i;
    double lo = 0.0;
    double hi = 0.0;
    if (i == k - 1) {
        hi = rho * norm2;
    } else {
        const double half = 0.5 * (d[u(i + 1)] - d[u(i)]);
        double fmid = 1.0;
        for (index_t j = 0; j < k; ++j) fmid += rho * z[u(j)] * z[u(j)] / ((d[u(j)] - d[u(i)]) - half);
        if (fmid >= 0.0) {
            hi = half;
        } else {
            origin = i + 1;
            lo = 0.5 * (d[u(i)] - d[u(i + 1)]);
        }
    }
    // Poles bounding the model: (i, i + 1) inside, the last two for the final root.
    const index_t pa = i == k - 1 ? k - 2 : i;
    const index_t pb = pa + 1;

    std::vector<double> delta(u(k));
    for (index_t j = 0; j < k; ++j) delta[u(j)] = d[u(j)] - d[u(origin)];

    double tau = 0.5 * (lo + hi);
    for (int iter = 0; iter < 100; ++iter) {
        double psi = 0.0, dpsi = 0.0, phi = 0.0, dphi = 0.0;
        for (index_t j = 0; j < k; ++j) {
            const double r = 1.0 / (delta[u(j)] - tau);
            const double term = rho * z[u(j)] * z[u(j)] * r;
            if (j <= pa) {
                psi += term;
                dpsi += term * r;
            } else {
                phi += term;
                dphi += term * r;
            }
        }
        const double f = 1.0 + psi + phi;
        const double scale = 1.0 + std::abs(psi) + std::abs(phi) + std::abs(tau) * (dpsi + dphi);
        if (std::abs(f) <= static_cast<double>(k) * eps * scale) return {d[u(origin)] + tau, origin, tau};
        if (f > 0.0) {
            hi = tau;
        } else {
            lo = tau;
        }
        if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi))) return {d[u(origin)] + tau, origin, tau};

        // Two-pole rational model c + s / (Da - eta) + S / (Db - eta) matching
        // f and the derivatives of its two halves at tau.
        const double da = delta[u(pa)] - tau;
        const double db = delta[u(pb)] - tau;
        const double s = da * da * dpsi;
        const double big_s = db * db * dphi;
        const double c = f - da * dpsi - db * dphi;
        const double b = c * (da + db) + s + big_s;
        const double cc = da * db * f;
        double eta = std::numeric_limits<double>::quiet_NaN();
        auto inside = [&](double x) { return std::isfinite(x) && tau + x > lo && tau + x < hi; };
        if (c == 0.0) {
            if (b != 0.0) eta = cc / b;
        } else {
            const double disc = b * b - 4.0 * c * cc;
            if (disc >= 0.0) {
                const double q = 0.5 * (b + std::copysign(std::sqrt(disc), b));
                const double e1 = q / c;
                const double e2 = q != 0.0 ? cc / q : std::numeric_limits<double>::quiet_NaN();
                if (inside(e1) && inside(e2)) {
                    eta = std::abs(e1) < std::abs(e2) ? e1 : e2;
                } else if (inside(e1)) {
                    eta = e1;
                } else if (inside(e2)) {
                    eta = e2;
                }
            }
        }
        // Every third step bisects to keep slow rational progress bounded.
        if (!inside(eta) || (iter > 10 && iter % 3 == 2)) {
            tau = 0.5 * (lo + hi);
        } else {
            if (std::abs(eta) <= eps * std::abs(tau)) return {d[u(origin)] + tau + eta, origin, tau + eta};
            tau += eta;
        }
    }
    throw ConvergenceFailure("secular equation: no convergence after 100 iterations");
}

}  // namespace

SecularRoot secular_solve(const std::vector<double>& d, const std::vector<double>& z, double rho, index_t i) {
    const index_t k = static_cast<index_t>(d.size());
    if (z.size() != d.size()) throw DimensionMismatch("secular_solve: d and u differ in length");
    if (i < 0 || i >= k) throw InvalidArgument("secular_solve: root index out of range");
    if (rho == 0.0) throw InvalidArgument("secular_solve: rho must be nonzero");
    if (rho > 0.0) return secular_positive(d, z, rho, i);
    std::vector<double> dr(d.rbegin(), d.rend());
    for (double& x : dr) x = -x;
    std::vector<double> zr(z.rbegin(), z.rend());
    const SecularRoot r = secular_positive(dr, zr, -rho, k - 1 - i);
    return {-r.lambda, k - 1 - r.origin, -r.offset};
}

Matrix<double> secular_vectors(const std::vector<double>& d, const std::vector<double>& z, double rho,
                               const std::vector<SecularRoot>& roots, const std::vector<index_t>& columns) {
    const index_t k = static_cast<index_t>(d.size());
    if (static_cast<index_t>(roots.size()) != k || z.size() != d.size())
        throw DimensionMismatch("secular_vectors: inconsistent problem size");
    // d_i - lambda_j, measured from the root's own pole.
    auto gap = [&](index_t i, index_t j) {
        const SecularRoot& r = roots[u(j)];
        return (d[u(i)] - d[u(r.origin)]) - r.offset;
    };
    std::vector<double> zhat(u(k));
    for (index_t i = 0; i < k; ++i) {
        double w = -gap(i, i) / rho;
        for (index_t j = 0; j < k; ++j) {
            if (j == i) continue;
            w *= -gap(i, j) / (d[u(j)] - d[u(i)]);
        }
        zhat[u(i)] = std::copysign(std::sqrt(std::abs(w)), z[u(i)]);
    }
    Matrix<double> q(k, static_cast<index_t>(columns.size()));
    for (index_t c = 0; c < q.cols(); ++c) {
        const index_t j = columns[u(c)];
        double norm2 = 0.0;
        for (index_t i = 0; i < k; ++i) {
            q(i, c) = zhat[u(i)] / gap(i, j);
            norm2 += q(i, c) * q(i, c);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (index_t i = 0; i < k; ++i) q(i, c) *= inv;
    }
    return q;
}

MergedEigen merge_vectors(const std::vector<double>& values1, ConstMatrixView<double> z1,
                          const std::vector<double>& values2, ConstMatrixView<double> z2, double rho,
                          bool want_vectors, index_t first, index_t last, Backend& backend) {
    const index_t n1 = static_cast<index_t>(values1.size());
    const index_t n2 = static_cast<index_t>(values2.size());
    const index_t n = n1 + n2;
    if (z1.rows != n1 || z1.cols != n1 || z2.rows != n2 || z2.cols != n2)
        throw DimensionMismatch("merge_vectors: child eigenvector shapes");
    if (n1 < 1 || n2 < 1) throw InvalidArgument("merge_vectors: empty child");
    if (first < 0 || first > last || last > n) throw InvalidArgument("merge_vectors: column range");

    std::vector<double> d(values1);
    d.insert(d.end(), values2.begin(), values2.end());
    std::vector<double> z(u(n));
    for (index_t i = 0; i < n1; ++i) z[u(i)] = z1(n1 - 1, i);
    for (index_t i = 0; i < n2; ++i) z[u(n1 + i)] = z2(0, i);
    double norm2 = 0.0;
    for (double x : z) norm2 += x * x;
    const double norm = std::sqrt(norm2);
    if (norm > 0.0)
        for (double& x : z) x /= norm;

    MergeProblem mp = make_merge_problem(std::move(d), std::move(z), rho * norm2);
    mp = deflate(std::move(mp), deflation_tolerance(mp));

    const index_t k = static_cast<index_t>(mp.active.size());
    std::vector<double> dk(u(k)), zk(u(k));
    for (index_t i = 0; i < k; ++i) {
        dk[u(i)] = mp.d[u(mp.active[u(i)])];
        zk[u(i)] = mp.u[u(mp.active[u(i)])];
    }
    std::vector<SecularRoot> roots(u(k));
    for (index_t i = 0; i < k; ++i) roots[u(i)] = secular_solve(dk, zk, mp.rho, i);

    // Each output column is either a secular root (source >= 0 indexes roots)
    // or a deflated column (source < 0 encodes -1 - index).
    struct Entry {
        double value;
        index_t source;
    };
    std::vector<Entry> entries;
    entries.reserve(u(n));
    for (index_t i = 0; i < k; ++i) entries.push_back({roots[u(i)].lambda, i});
    for (index_t t : mp.deflated) entries.push_back({mp.d[u(t)], -1 - t});
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.value < b.value; });

    MergedEigen out;
    out.values.reserve(u(n));
    for (const Entry& e : entries) out.values.push_back(e.value);
    if (!want_vectors) return out;

    const index_t m = last - first;
    Matrix<double> w(n, m);
    std::vector<index_t> needed;
    std::vector<index_t> needed_cols;
    for (index_t c = 0; c < m; ++c) {
        const Entry& e = entries[u(first + c)];
        if (e.source < 0) {
            w(-1 - e.source, c) = 1.0;
        } else {
            needed.push_back(e.source);
            needed_cols.push_back(c);
        }
    }
    if (!needed.empty()) {
        const Matrix<double> q = secular_vectors(dk, zk, mp.rho, roots, needed);
        for (std::size_t c = 0; c < needed.size(); ++c)
            for (index_t i = 0; i < k; ++i) w(mp.active[u(i)], needed_cols[c]) = q(i, static_cast<index_t>(c));
    }
    for (auto it = mp.rotations.rbegin(); it != mp.rotations.rend(); ++it) {
        for (index_t c = 0; c < m; ++c) {
            const double wi = w(it->i, c);
            const double wj = w(it->j, c);
            w(it->i, c) = it->c * wi - it->s * wj;
            w(it->j, c) = it->s * wi + it->c * wj;
        }
    }

    Matrix<double> result(n, m);
    if (m > 0) {
        backend.multiply_accumulate(1.0, Op::NoTrans, z1, Op::NoTrans, w.cview().block(0, 0, n1, m), 0.0,
                                    result.view().block(0, 0, n1, m));
        backend.multiply_accumulate(1.0, Op::NoTrans, z2, Op::NoTrans, w.cview().block(n1, 0, n2, m), 0.0,
                                    result.view().block(n1, 0, n2, m));
    }
    out.vectors = std::move(result);
    return out;
}

namespace {

struct Eigenbasis {
    std::vector<double> values;
    Matrix<double> vectors;
};

Eigenbasis solve_base(const RealSymTridiagonal& t) {
    const Matrix<double> dense = t.to_dense();
    JacobiResult<double> r = jacobi_eigen(dense.cview());
    return {std::move(r.values), std::move(r.vectors)};
}

Eigenbasis solve_full(const RealSymTridiagonal& t, Backend& backend, const DcOptions& opt, int depth) {
    if (t.n() <= opt.base_size) return solve_base(t);
    TridiagSplit sp = split_and_glue(t, t.n() / 2);
    Eigenbasis left;
    Eigenbasis right;
    if (opt.parallel && t.n() >= 512 && depth < 3) {
        auto fut = std::async(std::launch::async, [&] { return solve_full(sp.t1, backend, opt, depth + 1); });
        right = solve_full(sp.t2, backend, opt, depth + 1);
        left = fut.get();
    } else {
        left = solve_full(sp.t1, backend, opt, depth + 1);
        right = solve_full(sp.t2, backend, opt, depth + 1);
    }
    MergedEigen m = merge_vectors(left.values, left.vectors.cview(), right.values, right.vectors.cview(), sp.rho,
                                  true, 0, t.n(), backend);
    return {std::move(m.values), std::move(*m.vectors)};
}

}  // namespace

TridiagEigen dc_solve(const RealSymTridiagonal& t, const EigenSelection& sel, Backend& backend,
                      const DcOptions& options) {
    t.validate();
    if (options.base_size < 1) throw InvalidArgument("D&C base size must be >= 1");
    const index_t n = t.n();
    TridiagEigen out;
    out.selection = sel.resolve(n);
    const index_t first = out.selection.il - 1;
    const index_t m = out.selection.count();

    double scale = 0.0;
    for (double x : t.d) scale = std::max(scale, std::abs(x));
    for (double x : t.e) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) {
        out.values.assign(u(n), 0.0);
        if (sel.vectors) {
            Matrix<double> v(n, m);
            for (index_t c = 0; c < m; ++c) v(first + c, c) = 1.0;
            out.vectors = std::move(v);
        }
        return out;
    }
    RealSymTridiagonal ts = t;
    for (double& x : ts.d) x /= scale;
    for (double& x : ts.e) x /= scale;

    if (n <= options.base_size) {
        Eigenbasis b = solve_base(ts);
        out.values = std::move(b.values);
        if (sel.vectors) out.vectors = to_matrix(b.vectors.cview().block(0, first, n, m));
    } else {
        // Only this last merge is restricted to the selected columns.
        TridiagSplit sp = split_and_glue(ts, n / 2);
        Eigenbasis left;
        Eigenbasis right;
        if (options.parallel && n >= 512) {
            auto fut = std::async(std::launch::async, [&] { return solve_full(sp.t1, backend, options, 1); });
            right = solve_full(sp.t2, backend, options, 1);
            left = fut.get();
        } else {
            left = solve_full(sp.t1, backend, options, 1);
            right = solve_full(sp.t2, backend, options, 1);
        }
        MergedEigen merged = merge_vectors(left.values, left.vectors.cview(), right.values, right.vectors.cview(),
                                           sp.rho, sel.vectors, first, first + m, backend);
        out.values = std::move(merged.values);
        out.vectors = std::move(merged.vectors);
    }
    for (double& x : out.values) x *= scale;
    return out;
}

}  // namespace hermeig
