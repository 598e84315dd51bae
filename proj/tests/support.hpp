#pragma once

// Test-only oracles and generators. Nothing here calls the library routine it
// is used to check: intersections come from Gaussian elimination, definiteness
// from attempted Cholesky factorization, graphs are written out by hand.

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "garland/garland.hpp"
#include "garland/io.hpp"

namespace garland::testing {

inline std::string data_path(const std::string& rel) { return std::string(GARLAND_DATA_DIR) + "/" + rel; }

using Dense = std::vector<Vector>;  // row-major

inline Vector gaussian_vector(std::mt19937_64& rng, std::size_t d) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(d);
    for (double& x : v) x = g(rng);
    return v;
}

/// Classical Gram-Schmidt, twice; drops nothing (inputs are generic).
inline Dense gram_schmidt(Dense vs) {
    Dense out;
    for (auto& v : vs) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : out) {
                double c = 0;
                for (std::size_t i = 0; i < v.size(); ++i) c += q[i] * v[i];
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
            }
        double n = 0;
        for (double x : v) n += x * x;
        n = std::sqrt(n);
        for (double& x : v) x /= n;
        out.push_back(v);
    }
    return out;
}

inline Dense random_orthogonal(std::mt19937_64& rng, std::size_t d) {
    Dense vs;
    for (std::size_t i = 0; i < d; ++i) vs.push_back(gaussian_vector(rng, d));
    return gram_schmidt(vs);
}

/// Null space of the matrix with the given columns, by Gauss-Jordan elimination
/// with partial pivoting.
inline Dense null_space(const Dense& columns, std::size_t rows, double tol = 1e-9) {
    const std::size_t cols = columns.size();
    Dense a(rows, Vector(cols));
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) a[i][j] = columns[j][i];
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = r;
        for (std::size_t i = r; i < rows; ++i)
            if (std::abs(a[i][c]) > std::abs(a[best][c])) best = i;
        if (std::abs(a[best][c]) <= tol) continue;
        std::swap(a[r], a[best]);
        const double p = a[r][c];
        for (double& x : a[r]) x /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double f = a[i][c];
            if (f == 0) continue;
            for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[r][k];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    Dense basis;
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vector v(cols, 0.0);
        v[free] = 1.0;
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a[k][free];
        basis.push_back(v);
    }
    return basis;
}

/// Rank by elimination.
inline std::size_t rank_of(const Dense& columns, std::size_t rows, double tol = 1e-9) {
    return columns.size() - null_space(columns, rows, tol).size();
}

/// Orthonormal basis of U ∩ V from the null space of [B_U | -B_V].
inline Dense oracle_intersection(const Subspace& u, const Subspace& v) {
    const std::size_t d = u.ambient_dim();
    Dense cols = u.basis();
    for (auto b : v.basis()) {
        for (double& x : b) x = -x;
        cols.push_back(b);
    }
    Dense common;
    for (const auto& coeff : null_space(cols, d)) {
        Vector w(d, 0.0);
        for (std::size_t i = 0; i < u.dim(); ++i)
            for (std::size_t r = 0; r < d; ++r) w[r] += coeff[i] * u.basis()[i][r];
        common.push_back(w);
    }
    return common.empty() ? common : gram_schmidt(common);
}

inline Dense projector(const Dense& orthonormal, std::size_t d) {
    Dense p(d, Vector(d, 0.0));
    for (const auto& b : orthonormal)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) p[i][j] += b[i] * b[j];
    return p;
}

inline Dense matmul(const Dense& a, const Dense& b) {
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    Dense c(n, Vector(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    return c;
}

/// ||P_U P_V - P_{U∩V}||, the projection form of the angle cosine.
inline double oracle_angle_cos(const Subspace& u, const Subspace& v) {
    const std::size_t d = u.ambient_dim();
    Dense m = matmul(projector(u.basis(), d), projector(v.basis(), d));
    const Dense pi = projector(oracle_intersection(u, v), d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m[i][j] -= pi[i][j];
    // columns of m
    Dense cols(d, Vector(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) cols[j][i] = m[i][j];
    return singular_values(cols, d).values.front();
}

/// Attempts L L^T = M + shift I; succeeds iff M + shift I is positive definite.
inline bool cholesky_succeeds(const SymMatrix& m, double shift = 0.0) {
    const std::size_t n = m.dim();
    Dense l(n, Vector(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        double s = m(j, j) + shift;
        for (std::size_t k = 0; k < j; ++k) s -= l[j][k] * l[j][k];
        if (!(s > 0.0)) return false;
        l[j][j] = std::sqrt(s);
        for (std::size_t i = j + 1; i < n; ++i) {
            double t = m(i, j);
            for (std::size_t k = 0; k < j; ++k) t -= l[i][k] * l[j][k];
            l[i][j] = t / l[j][j];
        }
    }
    return true;
}

inline LinkGraph cycle_graph(std::size_t k) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
    return LinkGraph::from_edges(k, std::move(e));
}

inline LinkGraph complete_bipartite(std::size_t a, std::size_t b) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return LinkGraph::from_edges(a + b, std::move(e));
}

/// Point-line incidence graph of the Fano plane.
inline LinkGraph heawood_graph() {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t l = 0; l < 7; ++l)
        for (std::size_t off : {0u, 1u, 3u}) e.emplace_back((l + off) % 7, 7 + l);
    return LinkGraph::from_edges(14, std::move(e));
}

/// Cycle of length k as a 1-dimensional 2-partite complex (k even).
inline PartiteComplex cycle_complex(std::size_t k) {
    std::vector<VertexSpec> v;
    std::vector<std::vector<VertexId>> f;
    for (std::size_t i = 0; i < k; ++i) v.push_back({static_cast<VertexId>(i), static_cast<int>(i % 2)});
    for (std::size_t i = 0; i < k; ++i) f.push_back({static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % k)});
    return PartiteComplex(1, std::move(v), std::move(f));
}

inline PartiteComplex load_complex(const std::string& rel) {
    return parse_complex(parse_json_text(read_file(data_path(rel))));
}

/// Random cosine matrix: unit diagonal, off-diagonal entries uniform in [lo, 0].
inline CosineMatrix random_cosine(std::mt19937_64& rng, std::size_t dim, double lo = -1.0) {
    std::uniform_real_distribution<double> u(lo, 0.0);
    SymMatrix m = SymMatrix::identity(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) m.set(i, j, u(rng));
    return CosineMatrix(std::move(m));
}

inline CoxeterMatrix load_coxeter(const std::string& rel) {
    return parse_coxeter(parse_json_text(read_file(data_path(rel))));
}

inline SymMatrix example_rank4_cosine() {
    const double r = 1.0 / std::sqrt(2.0);
    return SymMatrix::from_rows({{1, -r, -0.5, 0}, {-r, 1, -0.5, 0}, {-0.5, -0.5, 1, -0.5}, {0, 0, -0.5, 1}});
}

}  // namespace garland::testing
