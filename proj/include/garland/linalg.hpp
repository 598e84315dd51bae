#pragma once

// Dense real linear algebra for the small symmetric problems in this library:
// cyclic Jacobi eigensolver, one-sided Jacobi singular values, definiteness
// classification, the entrywise matrix order, and pivoted Gram-Schmidt.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "garland/errors.hpp"

namespace garland {

using Vector = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

/// Dense symmetric matrix. Storage is full row-major and kept exactly symmetric.
class SymMatrix {
public:
    static constexpr double kSymmetryTol = 1e-12;

    explicit SymMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {
        if (dim == 0) throw ValidationError("SymMatrix: dimension must be at least 1");
    }

    static SymMatrix identity(std::size_t dim) {
        SymMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
        return m;
    }

    static SymMatrix diagonal(std::span<const double> d) {
        SymMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
        return m;
    }

    /// Builds from explicit rows; asymmetry above kSymmetryTol is rejected and the
    /// remainder is averaged away.
    static SymMatrix from_rows(const std::vector<Vector>& rows) {
        const std::size_t n = rows.size();
        if (n == 0) throw ValidationError("SymMatrix: no rows");
        for (const auto& r : rows)
            if (r.size() != n) throw ValidationError("SymMatrix: matrix is not square");
        SymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                if (!std::isfinite(rows[i][j]) || !std::isfinite(rows[j][i]))
                    throw ValidationError("SymMatrix: non-finite entry at (" + std::to_string(i) +
                                          "," + std::to_string(j) + ")");
                if (std::abs(rows[i][j] - rows[j][i]) > kSymmetryTol)
                    throw ValidationError("SymMatrix: not symmetric at (" + std::to_string(i) +
                                          "," + std::to_string(j) + ")");
                m.set(i, j, i == j ? rows[i][i] : 0.5 * (rows[i][j] + rows[j][i]));
            }
        }
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }

    /// Sets entries (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, double v) noexcept {
        data_[i * dim_ + j] = v;
        data_[j * dim_ + i] = v;
    }

    double max_abs() const noexcept {
        double m = 0.0;
        for (double x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    double frobenius() const noexcept {
        double s = 0.0;
        for (double x : data_) s += x * x;
        return std::sqrt(s);
    }

    std::vector<Vector> rows() const {
        std::vector<Vector> out(dim_, Vector(dim_));
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) out[i][j] = (*this)(i, j);
        return out;
    }

    Vector apply(std::span<const double> x) const {
        Vector y(dim_, 0.0);
        for (std::size_t i = 0; i < dim_; ++i)
            y[i] = dot(std::span<const double>(data_.data() + i * dim_, dim_), x);
        return y;
    }

    /// Principal submatrix with row/column `skip` removed. Requires dim >= 2.
    SymMatrix without_index(std::size_t skip) const {
        SymMatrix m(dim_ - 1);
        for (std::size_t i = 0, a = 0; i < dim_; ++i) {
            if (i == skip) continue;
            for (std::size_t j = 0, b = 0; j < dim_; ++j) {
                if (j == skip) continue;
                m.data_[a * (dim_ - 1) + b] = (*this)(i, j);
                ++b;
            }
            ++a;
        }
        return m;
    }

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) {
        check_same_dim(a, b);
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
        return a;
    }

    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) {
        check_same_dim(a, b);
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
        return a;
    }

    friend SymMatrix operator*(double s, SymMatrix a) {
        for (double& x : a.data_) x *= s;
        return a;
    }

    static void check_same_dim(const SymMatrix& a, const SymMatrix& b) {
        if (a.dim() != b.dim())
            throw ValidationError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                  std::to_string(b.dim()));
    }

private:
    std::size_t dim_;
    std::vector<double> data_;
};

/// D * A * D for diagonal D given by its entries.
inline SymMatrix diagonal_congruence(const SymMatrix& a, std::span<const double> d) {
    if (d.size() != a.dim()) throw ValidationError("diagonal_congruence: dimension mismatch");
    SymMatrix out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j) out.set(i, j, d[i] * a(i, j) * d[j]);
    return out;
}

struct Spectrum {
    Vector eigenvalues;                               // ascending
    std::optional<std::vector<Vector>> eigenvectors;  // eigenvectors[k] pairs with eigenvalues[k]

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
};

/// Cyclic Jacobi rotations. Sweeps stop once the off-diagonal Frobenius norm
/// drops to 1e-12 * ||M||_F, or after 100 sweeps.
inline Spectrum sym_eigs(const SymMatrix& m, bool want_vectors = false) {
    constexpr int kMaxSweeps = 100;
    const std::size_t n = m.dim();
    std::vector<Vector> a = m.rows();
    std::vector<Vector> v;
    if (want_vectors) {
        v.assign(n, Vector(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    }

    const double target = 1e-12 * m.frobenius();
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) off += a[i][j] * a[i][j];
        if (std::sqrt(off) <= target) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p][q];
                if (apq == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = v[k][p];
                        const double vkq = v[k][q];
                        v[k][p] = c * vkp - s * vkq;
                        v[k][q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a[x][x] < a[y][y]; });

    Spectrum out;
    out.eigenvalues.reserve(n);
    for (std::size_t k : order) out.eigenvalues.push_back(a[k][k]);
    if (want_vectors) {
        std::vector<Vector> vecs;
        vecs.reserve(n);
        for (std::size_t k : order) {
            Vector col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = v[i][k];
            vecs.push_back(std::move(col));
        }
        out.eigenvectors = std::move(vecs);
    }
    return out;
}

inline double min_eigenvalue(const SymMatrix& m) { return sym_eigs(m).min(); }

enum class Definiteness { positive_definite, positive_semidefinite, indefinite };

inline const char* to_string(Definiteness d) {
    switch (d) {
        case Definiteness::positive_definite: return "positive_definite";
        case Definiteness::positive_semidefinite: return "positive_semidefinite";
        case Definiteness::indefinite: return "indefinite";
    }
    return "?";
}

struct DefinitenessClass {
    Definiteness tag = Definiteness::indefinite;
    std::size_t corank = 0;  // near-zero eigenvalue count; nonzero only when semidefinite

    friend bool operator==(const DefinitenessClass&, const DefinitenessClass&) = default;
};

inline double default_zero_tol(const SymMatrix& m) { return 1e-9 * std::max(1.0, m.max_abs()); }

inline DefinitenessClass classify_spectrum(std::span<const double> eigenvalues, double zero_tol) {
    if (!(zero_tol > 0.0)) throw ValidationError("classify_definiteness: zero_tol must be positive");
    const double lo = *std::min_element(eigenvalues.begin(), eigenvalues.end());
    if (lo > zero_tol) return {Definiteness::positive_definite, 0};
    if (lo < -zero_tol) return {Definiteness::indefinite, 0};
    const auto corank = static_cast<std::size_t>(std::count_if(
        eigenvalues.begin(), eigenvalues.end(), [&](double x) { return std::abs(x) <= zero_tol; }));
    return {Definiteness::positive_semidefinite, corank};
}

inline DefinitenessClass classify_definiteness(const SymMatrix& m,
                                               std::optional<double> zero_tol = std::nullopt) {
    const Spectrum s = sym_eigs(m);
    return classify_spectrum(s.eigenvalues, zero_tol.value_or(default_zero_tol(m)));
}

/// Entrywise order: a <= b in every entry. Exact comparison.
inline bool matrix_leq(const SymMatrix& a, const SymMatrix& b) {
    SymMatrix::check_same_dim(a, b);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (a(i, j) > b(i, j)) return false;
    return true;
}

struct OrthoBasis {
    std::vector<Vector> basis;
    std::size_t rank = 0;
};

/// Pivoted modified Gram-Schmidt with one reorthogonalization pass. A candidate
/// is kept while its residual norm exceeds rank_tol (default 1e-8 times the
/// largest input norm); at most max_rank vectors are returned.
inline OrthoBasis orthonormalize(std::span<const Vector> vectors, std::size_t ambient_dim,
                                 std::optional<double> rank_tol = std::nullopt,
                                 std::size_t max_rank = std::numeric_limits<std::size_t>::max()) {
    if (ambient_dim == 0) throw ValidationError("orthonormalize: ambient dimension must be positive");
    double max_norm = 0.0;
    for (const auto& v : vectors) {
        if (v.size() != ambient_dim)
            throw ValidationError("orthonormalize: vector of length " + std::to_string(v.size()) +
                                  " in ambient dimension " + std::to_string(ambient_dim));
        max_norm = std::max(max_norm, norm(v));
    }
    OrthoBasis out;
    if (max_norm == 0.0) return out;
    const double tol = rank_tol.value_or(1e-8 * max_norm);
    if (!(tol > 0.0)) throw ValidationError("orthonormalize: rank_tol must be positive");

    std::vector<Vector> residual(vectors.begin(), vectors.end());
    std::vector<bool> used(residual.size(), false);
    const std::size_t limit = std::min({max_rank, ambient_dim, residual.size()});
    while (out.basis.size() < limit) {
        std::size_t best = residual.size();
        double best_norm = -1.0;
        for (std::size_t i = 0; i < residual.size(); ++i) {
            if (used[i]) continue;
            const double r = norm(residual[i]);
            if (r > best_norm) {
                best_norm = r;
                best = i;
            }
        }
        if (best == residual.size() || best_norm <= tol) break;
        used[best] = true;
        Vector q = residual[best];
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : out.basis) axpy(-dot(b, q), b, q);
        const double qn = norm(q);
        if (qn <= tol) continue;
        for (double& x : q) x /= qn;
        for (std::size_t i = 0; i < residual.size(); ++i)
            if (!used[i]) axpy(-dot(q, residual[i]), q, residual[i]);
        out.basis.push_back(std::move(q));
    }
    out.rank = out.basis.size();
    return out;
}

struct SingularSystem {
    Vector values;                      // descending
    std::vector<Vector> right_vectors;  // right_vectors[k] pairs with values[k]
};

/// Singular values of the matrix whose columns are `columns` (each of length
/// rows), by one-sided (Hestenes) Jacobi rotations. Rank-deficient and wide
/// inputs are fine: surplus directions come out with singular value ~0.
inline SingularSystem singular_values(std::span<const Vector> columns, std::size_t rows) {
    constexpr int kMaxSweeps = 100;
    constexpr double kOrthoTol = 1e-15;
    const std::size_t k = columns.size();
    std::vector<Vector> u(columns.begin(), columns.end());
    for (const auto& c : u)
        if (c.size() != rows) throw ValidationError("singular_values: ragged columns");
    std::vector<Vector> v(k, Vector(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) v[i][i] = 1.0;
    // Columns this small relative to the whole matrix are rounding noise; rotating
    // them against each other never converges under the relative test below.
    double frob2 = 0.0;
    for (const auto& c : u) frob2 += dot(c, c);
    const double negligible = 1e-30 * frob2;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                const double alpha = dot(u[p], u[p]);
                const double beta = dot(u[q], u[q]);
                const double gamma = dot(u[p], u[q]);
                if (alpha <= negligible || beta <= negligible) continue;
                if (std::abs(gamma) <= kOrthoTol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t =
                    (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const double up = u[p][r];
                    const double uq = u[q][r];
                    u[p][r] = c * up - s * uq;
                    u[q][r] = s * up + c * uq;
                }
                for (std::size_t r = 0; r < k; ++r) {
                    const double vp = v[p][r];
                    const double vq = v[q][r];
                    v[p][r] = c * vp - s * vq;
                    v[q][r] = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Vector sigma(k);
    for (std::size_t i = 0; i < k; ++i) sigma[i] = norm(u[i]);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
    SingularSystem out;
    for (std::size_t i : order) {
        out.values.push_back(sigma[i]);
        out.right_vectors.push_back(v[i]);
    }
    return out;
}

}  // namespace garland
