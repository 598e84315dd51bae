#pragma once

// Subspaces of R^d held as orthonormal bases: projection, intersection,
// relative complements, the cosine of the angle between two subspaces, cosine
// matrices of subspace families, the three-subspace reduction and the face
// subspaces of a spherical simplex.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "garland/errors.hpp"
#include "garland/linalg.hpp"

namespace garland {

/// Containment and intersection residual threshold.
inline constexpr double kSubspaceTol = 1e-8;

class Subspace {
public:
    static constexpr double kGramTol = 1e-10;

    static Subspace zero(std::size_t ambient_dim) {
        check_ambient(ambient_dim);
        return Subspace(ambient_dim, {});
    }

    static Subspace whole(std::size_t ambient_dim) {
        check_ambient(ambient_dim);
        std::vector<Vector> basis(ambient_dim, Vector(ambient_dim, 0.0));
        for (std::size_t i = 0; i < ambient_dim; ++i) basis[i][i] = 1.0;
        return Subspace(ambient_dim, std::move(basis));
    }

    /// Span of an arbitrary (possibly dependent) spanning set.
    static Subspace span(std::span<const Vector> vectors, std::size_t ambient_dim,
                         std::optional<double> rank_tol = std::nullopt) {
        check_ambient(ambient_dim);
        return Subspace(ambient_dim, orthonormalize(vectors, ambient_dim, rank_tol).basis);
    }

    /// Adopts a basis that must already be orthonormal within kGramTol.
    static Subspace from_orthonormal(std::vector<Vector> basis, std::size_t ambient_dim) {
        check_ambient(ambient_dim);
        for (const auto& b : basis)
            if (b.size() != ambient_dim)
                throw ValidationError("Subspace: basis vector of length " + std::to_string(b.size()) +
                                      " in ambient dimension " + std::to_string(ambient_dim));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i; j < basis.size(); ++j) {
                const double g = dot(basis[i], basis[j]);
                if (std::abs(g - (i == j ? 1.0 : 0.0)) > kGramTol)
                    throw ValidationError("Subspace: basis is not orthonormal");
            }
        return Subspace(ambient_dim, std::move(basis));
    }

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    bool is_zero() const noexcept { return basis_.empty(); }
    const std::vector<Vector>& basis() const noexcept { return basis_; }

private:
    Subspace(std::size_t ambient_dim, std::vector<Vector> basis)
        : ambient_dim_(ambient_dim), basis_(std::move(basis)) {}

    static void check_ambient(std::size_t d) {
        if (d == 0) throw ValidationError("Subspace: ambient dimension must be positive");
    }

    std::size_t ambient_dim_;
    std::vector<Vector> basis_;
};

namespace detail {

inline void check_same_ambient(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw ValidationError("subspaces live in different ambient dimensions (" +
                              std::to_string(u.ambient_dim()) + " vs " +
                              std::to_string(v.ambient_dim()) + ")");
}

// Orthonormal basis of span(h.basis) projected onto u^perp, truncated to `count` vectors.
inline Subspace remove_component(const Subspace& h, const Subspace& u, std::size_t count);

}  // namespace detail

inline Vector project(std::span<const double> v, const Subspace& u) {
    if (v.size() != u.ambient_dim())
        throw ValidationError("project: vector of length " + std::to_string(v.size()) +
                              " in ambient dimension " + std::to_string(u.ambient_dim()));
    Vector out(v.size(), 0.0);
    for (const auto& b : u.basis()) axpy(dot(b, v), b, out);
    return out;
}

/// Distance from v to the subspace u.
inline double distance_to(std::span<const double> v, const Subspace& u) {
    Vector r(v.begin(), v.end());
    axpy(-1.0, project(v, u), r);
    return norm(r);
}

/// Largest distance from a unit basis vector of `inner` to `outer`; 0 for the zero subspace.
inline double containment_residual(const Subspace& inner, const Subspace& outer) {
    detail::check_same_ambient(inner, outer);
    double worst = 0.0;
    for (const auto& b : inner.basis()) worst = std::max(worst, distance_to(b, outer));
    return worst;
}

inline bool contains(const Subspace& outer, const Subspace& inner, double tol = kSubspaceTol) {
    return containment_residual(inner, outer) <= tol;
}

/// Smallest subspace containing all the given ones.
inline Subspace subspace_sum(std::span<const Subspace> parts, std::size_t ambient_dim) {
    std::vector<Vector> all;
    for (const auto& p : parts) {
        if (p.ambient_dim() != ambient_dim) throw ValidationError("subspace_sum: ambient mismatch");
        all.insert(all.end(), p.basis().begin(), p.basis().end());
    }
    return Subspace::span(all, ambient_dim);
}

/// U ∩ V. The orthonormal bases are stacked as [B_U | -B_V]; right singular
/// vectors with singular value <= tol are coefficient pairs (a, b) with
/// B_U a ~ B_V b, and the intersection is spanned by their midpoints.
inline Subspace intersect(const Subspace& u, const Subspace& v, double tol = kSubspaceTol) {
    detail::check_same_ambient(u, v);
    const std::size_t d = u.ambient_dim();
    if (u.is_zero() || v.is_zero()) return Subspace::zero(d);

    const std::size_t k = u.dim();
    const std::size_t l = v.dim();
    std::vector<Vector> columns;
    columns.reserve(k + l);
    for (const auto& b : u.basis()) columns.push_back(b);
    for (const auto& b : v.basis()) {
        Vector neg = b;
        for (double& x : neg) x = -x;
        columns.push_back(std::move(neg));
    }
    const SingularSystem svd = singular_values(columns, d);

    std::vector<Vector> common;
    for (std::size_t idx = 0; idx < svd.values.size(); ++idx) {
        if (svd.values[idx] > tol) continue;
        const Vector& coeff = svd.right_vectors[idx];
        Vector w(d, 0.0);
        for (std::size_t i = 0; i < k; ++i) axpy(0.5 * coeff[i], u.basis()[i], w);
        for (std::size_t j = 0; j < l; ++j) axpy(0.5 * coeff[k + j], v.basis()[j], w);
        common.push_back(std::move(w));
    }
    return Subspace::from_orthonormal(orthonormalize(common, d, std::nullopt, std::min(k, l)).basis, d);
}

inline Subspace detail::remove_component(const Subspace& h, const Subspace& u, std::size_t count) {
    std::vector<Vector> residuals;
    residuals.reserve(h.dim());
    for (const auto& b : h.basis()) {
        Vector r = b;
        axpy(-1.0, project(b, u), r);
        residuals.push_back(std::move(r));
    }
    // Residuals of unit vectors: an absolute threshold keeps directions that a
    // relative one would drop when every residual is small.
    return Subspace::from_orthonormal(
        orthonormalize(residuals, h.ambient_dim(), kSubspaceTol, count).basis, h.ambient_dim());
}

/// Orthogonal complement of `u` taken inside `h`. Requires u ⊆ h within 1e-8.
inline Subspace complement_within(const Subspace& h, const Subspace& u) {
    detail::check_same_ambient(h, u);
    const double res = containment_residual(u, h);
    if (res > kSubspaceTol)
        throw ValidationError("complement_within: subspace is not contained in the host (residual " +
                              std::to_string(res) + ")");
    if (u.dim() > h.dim()) throw ValidationError("complement_within: subspace larger than host");
    return detail::remove_component(h, u, h.dim() - u.dim());
}

/// Cosine of the angle between U and V: 0 if one contains the other, else the
/// largest cosine of a principal angle between U ⊖ (U∩V) and V ⊖ (U∩V).
inline double angle_cos(const Subspace& u, const Subspace& v) {
    detail::check_same_ambient(u, v);
    if (u.is_zero() || v.is_zero()) return 0.0;
    if (contains(v, u) || contains(u, v)) return 0.0;

    const Subspace common = intersect(u, v);
    const Subspace u_rest = detail::remove_component(u, common, u.dim() - common.dim());
    const Subspace v_rest = detail::remove_component(v, common, v.dim() - common.dim());
    if (u_rest.is_zero() || v_rest.is_zero()) return 0.0;

    std::vector<Vector> cross;
    cross.reserve(v_rest.dim());
    for (const auto& b : v_rest.basis()) {
        Vector col(u_rest.dim());
        for (std::size_t i = 0; i < u_rest.dim(); ++i) col[i] = dot(u_rest.basis()[i], b);
        cross.push_back(std::move(col));
    }
    const double top = singular_values(cross, u_rest.dim()).values.front();
    return std::clamp(top, 0.0, 1.0);
}

/// Ordered family V_0..V_n in a common ambient space.
class SubspaceFamily {
public:
    SubspaceFamily(std::size_t ambient_dim, std::vector<Subspace> members)
        : ambient_dim_(ambient_dim), members_(std::move(members)) {
        if (ambient_dim_ == 0) throw ValidationError("SubspaceFamily: ambient dimension must be positive");
        if (members_.empty()) throw ValidationError("SubspaceFamily: at least one subspace is required");
        for (std::size_t i = 0; i < members_.size(); ++i)
            if (members_[i].ambient_dim() != ambient_dim_)
                throw ValidationError("SubspaceFamily: member " + std::to_string(i) +
                                      " has the wrong ambient dimension");
    }

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    /// Largest index n; the family has n + 1 members.
    std::size_t n() const noexcept { return members_.size() - 1; }
    std::size_t size() const noexcept { return members_.size(); }
    const Subspace& operator[](std::size_t i) const { return members_.at(i); }
    const std::vector<Subspace>& members() const noexcept { return members_; }

private:
    std::size_t ambient_dim_;
    std::vector<Subspace> members_;
};

/// Symmetric matrix with unit diagonal and off-diagonal entries in [-1, 0].
class CosineMatrix {
public:
    explicit CosineMatrix(SymMatrix m) : m_(std::move(m)) {
        for (std::size_t i = 0; i < m_.dim(); ++i) {
            if (m_(i, i) != 1.0)
                throw ValidationError("CosineMatrix: diagonal entry " + std::to_string(i) + " is not 1");
            for (std::size_t j = i + 1; j < m_.dim(); ++j)
                if (!(m_(i, j) >= -1.0 && m_(i, j) <= 0.0))
                    throw ValidationError("CosineMatrix: entry (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") outside [-1, 0]");
        }
    }

    static CosineMatrix from_rows(const std::vector<Vector>& rows) {
        return CosineMatrix(SymMatrix::from_rows(rows));
    }

    const SymMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
    /// The cosine λ_ij = -A_ij.
    double lambda(std::size_t i, std::size_t j) const noexcept { return i == j ? 1.0 : -m_(i, j); }

    friend bool operator==(const CosineMatrix&, const CosineMatrix&) = default;

private:
    SymMatrix m_;
};

inline CosineMatrix cosine_matrix_of_family(const SubspaceFamily& family) {
    SymMatrix a = SymMatrix::identity(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            a.set(i, j, -angle_cos(family[i], family[j]));
    return CosineMatrix(std::move(a));
}

/// Upper bound for cos∠(V1∩V3, V2∩V3) in terms of the three pairwise cosines.
inline double kassabov_delta(double l12, double l13, double l23) {
    auto check = [](double x, const char* name) {
        if (!(x >= 0.0 && x <= 1.0))
            throw ValidationError(std::string("kassabov_delta: ") + name + " must lie in [0, 1]");
    };
    check(l12, "l12");
    check(l13, "l13");
    check(l23, "l23");
    if (l13 == 1.0 || l23 == 1.0)
        throw SingularityError("kassabov_delta: a cosine with the third subspace equals 1");
    return (l12 + l13 * l23) / (std::sqrt(1.0 - l13 * l13) * std::sqrt(1.0 - l23 * l23));
}

struct KassabovReduction {
    SymMatrix reduced;   // A': unit diagonal, off-diagonal -delta_ij
    SymMatrix unscaled;  // A'': diagonal 1 - λ_in^2, off-diagonal -λ_ij - λ_in λ_jn
    SymMatrix scaling;   // D: diagonal 1 / sqrt(1 - λ_in^2)
};

/// Eliminates the last index n of a cosine matrix. A' = D A'' D.
inline KassabovReduction kassabov_reduced(const CosineMatrix& a) {
    if (a.dim() < 2) throw ValidationError("kassabov_reduced: need at least two subspaces");
    const std::size_t n = a.dim() - 1;
    Vector lambda_n(n);
    for (std::size_t i = 0; i < n; ++i) {
        lambda_n[i] = a.lambda(i, n);
        if (lambda_n[i] >= 1.0)
            throw SingularityError("kassabov_reduced: cosine between " + std::to_string(i) + " and " +
                                   std::to_string(n) + " equals 1");
    }
    SymMatrix reduced = SymMatrix::identity(n);
    SymMatrix unscaled(n);
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = 1.0 / std::sqrt(1.0 - lambda_n[i] * lambda_n[i]);
        unscaled.set(i, i, 1.0 - lambda_n[i] * lambda_n[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double lij = a.lambda(i, j);
            unscaled.set(i, j, -lij - lambda_n[i] * lambda_n[j]);
            reduced.set(i, j, -kassabov_delta(lij, lambda_n[i], lambda_n[j]));
        }
    }
    return {std::move(reduced), std::move(unscaled), SymMatrix::diagonal(d)};
}

/// For unit vertices x_0..x_n in general position, V_i' = span{x_k : k != i}.
inline SubspaceFamily spherical_face_family(const std::vector<Vector>& vertices) {
    constexpr double kUnitTol = 1e-10;
    if (vertices.empty()) throw ValidationError("spherical_face_family: no vertices");
    const std::size_t d = vertices.front().size();
    if (d == 0) throw ValidationError("spherical_face_family: empty vertex vectors");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].size() != d)
            throw ValidationError("spherical_face_family: vertex " + std::to_string(i) +
                                  " has the wrong dimension");
        if (std::abs(norm(vertices[i]) - 1.0) > kUnitTol)
            throw ValidationError("spherical_face_family: vertex " + std::to_string(i) +
                                  " is not a unit vector");
    }
    if (orthonormalize(vertices, d).rank < vertices.size())
        throw GeneralPositionError("spherical_face_family: vertices are not in general position");

    std::vector<Subspace> faces;
    faces.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        std::vector<Vector> others;
        for (std::size_t k = 0; k < vertices.size(); ++k)
            if (k != i) others.push_back(vertices[k]);
        faces.push_back(Subspace::span(others, d));
    }
    return SubspaceFamily(d, std::move(faces));
}

}  // namespace garland
