#pragma once

// The intersection lattice H_τ = ∩_{i∉τ} V_i of a subspace family, its "new at
// τ" components H^τ = H_τ ∩ (Σ_{η⊊τ} H_η)^⊥, and a numerical check that
// H_τ = ⊕_{η⊆τ} H^η.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "garland/errors.hpp"
#include "garland/linalg.hpp"
#include "garland/subspaces.hpp"

namespace garland {

/// Subset of {0,...,n} as a bitmask, n <= 30.
class IndexSet {
public:
    static constexpr std::size_t kMaxIndex = 30;

    constexpr IndexSet() = default;
    constexpr explicit IndexSet(std::uint32_t mask) : mask_(mask) {}

    static IndexSet full(std::size_t n) {
        check_index(n);
        return IndexSet(static_cast<std::uint32_t>((std::uint64_t{1} << (n + 1)) - 1));
    }

    static IndexSet of(std::initializer_list<std::size_t> elems) {
        IndexSet s;
        for (std::size_t i : elems) s = s.with(i);
        return s;
    }

    template <class Range>
    static IndexSet from_range(const Range& elems) {
        IndexSet s;
        for (auto i : elems) s = s.with(static_cast<std::size_t>(i));
        return s;
    }

    constexpr std::uint32_t mask() const noexcept { return mask_; }
    constexpr bool empty() const noexcept { return mask_ == 0; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
    bool contains(std::size_t i) const noexcept { return i <= kMaxIndex && ((mask_ >> i) & 1u); }
    constexpr bool subset_of(IndexSet other) const noexcept { return (mask_ & ~other.mask_) == 0; }

    IndexSet with(std::size_t i) const {
        check_index(i);
        return IndexSet(mask_ | (std::uint32_t{1} << i));
    }
    IndexSet without(std::size_t i) const {
        check_index(i);
        return IndexSet(mask_ & ~(std::uint32_t{1} << i));
    }

    std::vector<std::size_t> elements() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i <= kMaxIndex; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    friend constexpr auto operator<=>(IndexSet, IndexSet) = default;

private:
    static void check_index(std::size_t i) {
        if (i > kMaxIndex)
            throw ValidationError("IndexSet: index " + std::to_string(i) + " exceeds " +
                                  std::to_string(kMaxIndex));
    }

    std::uint32_t mask_ = 0;
};

inline std::string to_string(IndexSet s) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i : s.elements()) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

namespace detail {

inline void check_tau(const SubspaceFamily& family, IndexSet tau) {
    if (family.n() > IndexSet::kMaxIndex)
        throw ValidationError("family has " + std::to_string(family.size()) +
                              " members; at most 31 are supported");
    if (!tau.subset_of(IndexSet::full(family.n())))
        throw ValidationError("index set " + to_string(tau) + " is not a subset of {0.." +
                              std::to_string(family.n()) + "}");
}

}  // namespace detail

/// H_τ: the whole space for τ = {0..n}, otherwise the intersection of V_i over i ∉ τ.
inline Subspace h_tau(const SubspaceFamily& family, IndexSet tau) {
    detail::check_tau(family, tau);
    Subspace out = Subspace::whole(family.ambient_dim());
    for (std::size_t i = 0; i < family.size(); ++i)
        if (!tau.contains(i)) out = intersect(out, family[i]);
    return out;
}

/// H^τ from the already computed H_η (indexed by mask). The sum of H_η over
/// η ⊊ τ equals the sum over the maximal ones τ∖{i}, since H_η is monotone in η.
inline Subspace h_sup_tau(const SubspaceFamily& family, IndexSet tau,
                          const std::vector<Subspace>& lower) {
    detail::check_tau(family, tau);
    const Subspace& host = lower.at(tau.mask());
    if (tau.empty()) return host;

    std::vector<Subspace> parts;
    for (std::size_t i : tau.elements()) parts.push_back(lower.at(tau.without(i).mask()));
    const Subspace below = subspace_sum(parts, family.ambient_dim());

    std::vector<Vector> projected;
    projected.reserve(below.dim());
    for (const auto& b : below.basis()) projected.push_back(project(b, host));
    const Subspace inside = Subspace::span(projected, family.ambient_dim(), kSubspaceTol);
    return complement_within(host, inside);
}

struct SubspaceLattice {
    SubspaceFamily family;
    std::vector<Subspace> h_lower;  // indexed by IndexSet::mask()
    std::vector<Subspace> h_upper;

    const Subspace& lower(IndexSet tau) const { return h_lower.at(tau.mask()); }
    const Subspace& upper(IndexSet tau) const { return h_upper.at(tau.mask()); }
    IndexSet full() const { return IndexSet::full(family.n()); }
};

inline SubspaceLattice build_lattice(const SubspaceFamily& family) {
    constexpr std::size_t kMaxLatticeIndex = 20;  // 2^21 subspaces is already far past useful
    if (family.n() > IndexSet::kMaxIndex || family.n() > kMaxLatticeIndex)
        throw ValidationError("build_lattice: family with " + std::to_string(family.size()) +
                              " members is too large");
    const std::uint32_t count = std::uint32_t{1} << (family.n() + 1);
    const std::uint32_t full = count - 1;

    std::vector<Subspace> lower(count, Subspace::zero(family.ambient_dim()));
    lower[full] = Subspace::whole(family.ambient_dim());
    // H_τ = V_i ∩ H_{τ∪{i}} for the smallest i ∉ τ; supersets have larger masks.
    for (std::uint32_t mask = full; mask-- > 0;) {
        const auto i = static_cast<std::size_t>(std::countr_one(mask));
        lower[mask] = intersect(lower[mask | (std::uint32_t{1} << i)], family[i]);
    }

    std::vector<std::uint32_t> order(count);
    for (std::uint32_t m = 0; m < count; ++m) order[m] = m;
    std::stable_sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
        return std::popcount(a) < std::popcount(b);
    });
    std::vector<Subspace> upper(count, Subspace::zero(family.ambient_dim()));
    for (std::uint32_t mask : order) upper[mask] = h_sup_tau(family, IndexSet(mask), lower);

    return {family, std::move(lower), std::move(upper)};
}

struct DecompositionReport {
    IndexSet tau;
    bool holds = false;
    std::size_t dim_h_tau = 0;
    std::size_t sum_of_component_dims = 0;
    /// Of the concatenated component bases; +inf when there are no components.
    double min_singular_value = std::numeric_limits<double>::infinity();
    /// Largest distance from a basis vector of H_τ to the span of the components.
    double reconstruction_residual = 0.0;
};

inline std::vector<Vector> component_columns(const SubspaceLattice& lattice, IndexSet tau) {
    std::vector<Vector> columns;
    for (std::uint32_t m = 0; m <= tau.mask(); ++m) {
        const IndexSet eta(m);
        if (!eta.subset_of(tau)) continue;
        const auto& b = lattice.upper(eta).basis();
        columns.insert(columns.end(), b.begin(), b.end());
    }
    return columns;
}

inline DecompositionReport verify_decomposition(const SubspaceLattice& lattice, IndexSet tau,
                                                double tol = 1e-7) {
    detail::check_tau(lattice.family, tau);
    if (!(tol > 0.0)) throw ValidationError("verify_decomposition: tol must be positive");
    const std::size_t d = lattice.family.ambient_dim();
    DecompositionReport r;
    r.tau = tau;
    const Subspace& host = lattice.lower(tau);
    r.dim_h_tau = host.dim();

    const std::vector<Vector> columns = component_columns(lattice, tau);
    r.sum_of_component_dims = columns.size();
    if (!columns.empty()) r.min_singular_value = singular_values(columns, d).values.back();

    const Subspace spanned = Subspace::span(columns, d);
    for (const auto& b : host.basis())
        r.reconstruction_residual = std::max(r.reconstruction_residual, distance_to(b, spanned));

    r.holds = r.sum_of_component_dims == r.dim_h_tau && r.min_singular_value > tol &&
              r.reconstruction_residual <= tol;
    return r;
}

inline DecompositionReport verify_decomposition(const SubspaceFamily& family, IndexSet tau,
                                                double tol = 1e-7) {
    return verify_decomposition(build_lattice(family), tau, tol);
}

struct Component {
    IndexSet eta;
    Vector value;
};

/// Splits v ∈ H_τ into pieces v_η ∈ H^η (η ⊆ τ) by least squares over the
/// concatenated component bases.
inline std::vector<Component> split_vector(const SubspaceLattice& lattice, IndexSet tau,
                                           std::span<const double> v) {
    detail::check_tau(lattice.family, tau);
    const std::size_t d = lattice.family.ambient_dim();
    if (v.size() != d) throw ValidationError("split_vector: dimension mismatch");
    const std::vector<Vector> columns = component_columns(lattice, tau);
    std::vector<Component> out;
    if (columns.empty()) return out;

    const std::size_t k = columns.size();
    SymMatrix gram(k);
    Vector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        rhs[i] = dot(columns[i], v);
        for (std::size_t j = i; j < k; ++j) gram.set(i, j, dot(columns[i], columns[j]));
    }
    const Spectrum s = sym_eigs(gram, true);
    Vector coeff(k, 0.0);
    const double cutoff = 1e-14 * s.max();
    for (std::size_t e = 0; e < k; ++e) {
        if (s.eigenvalues[e] <= cutoff) continue;
        const Vector& q = (*s.eigenvectors)[e];
        axpy(dot(q, rhs) / s.eigenvalues[e], q, coeff);
    }

    std::size_t at = 0;
    for (std::uint32_t m = 0; m <= tau.mask(); ++m) {
        const IndexSet eta(m);
        if (!eta.subset_of(tau)) continue;
        Component c{eta, Vector(d, 0.0)};
        for (std::size_t b = 0; b < lattice.upper(eta).dim(); ++b, ++at)
            axpy(coeff[at], columns[at], c.value);
        out.push_back(std::move(c));
    }
    return out;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Family of n+1 random subspaces: orthonormalized standard Gaussian frames,
/// deterministic in the seed. Rank-deficient draws are redrawn at the next offset.
inline SubspaceFamily random_family(std::uint64_t seed, std::size_t ambient_dim, std::size_t n,
                                    const std::vector<std::size_t>& member_dims) {
    constexpr std::uint32_t kMaxRedraws = 1000;
    if (ambient_dim == 0) throw ValidationError("random_family: ambient dimension must be positive");
    if (member_dims.size() != n + 1)
        throw ValidationError("random_family: expected " + std::to_string(n + 1) + " member dimensions");
    for (std::size_t dim : member_dims)
        if (dim > ambient_dim)
            throw ValidationError("random_family: member dimension " + std::to_string(dim) +
                                  " exceeds ambient dimension " + std::to_string(ambient_dim));

    for (std::uint32_t offset = 0; offset < kMaxRedraws; ++offset) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), offset};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<Subspace> members;
        bool degenerate = false;
        for (std::size_t dim : member_dims) {
            std::vector<Vector> frame(dim, Vector(ambient_dim));
            for (auto& v : frame)
                for (double& x : v) x = gauss(rng);
            Subspace s = Subspace::span(frame, ambient_dim);
            if (s.dim() != dim) {
                degenerate = true;
                break;
            }
            members.push_back(std::move(s));
        }
        if (!degenerate) return SubspaceFamily(ambient_dim, std::move(members));
    }
    throw ValidationError("random_family: could not draw a full-rank family");
}

struct PositiveDefiniteSample {
    SubspaceFamily family;
    CosineMatrix cosine;
    double min_eigenvalue;
    std::uint32_t attempts;
};

/// Rejection sampling: redraws until the family's cosine matrix is positive definite.
inline PositiveDefiniteSample random_positive_definite_family(std::uint64_t seed, std::size_t ambient_dim,
                                                              std::size_t n,
                                                              const std::vector<std::size_t>& member_dims,
                                                              std::uint32_t max_attempts = 1000) {
    for (std::uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
        SubspaceFamily family =
            random_family(detail::splitmix64(seed ^ (std::uint64_t{attempt} << 40)), ambient_dim, n, member_dims);
        CosineMatrix cosine = cosine_matrix_of_family(family);
        const double mu = min_eigenvalue(cosine.matrix());
        if (classify_definiteness(cosine.matrix()).tag == Definiteness::positive_definite)
            return {std::move(family), std::move(cosine), mu, attempt + 1};
    }
    throw CriterionError("random_positive_definite_family: no positive-definite draw in " +
                         std::to_string(max_attempts) + " attempts");
}

}  // namespace garland
