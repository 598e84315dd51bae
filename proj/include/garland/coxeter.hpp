#pragma once

// Coxeter matrices, their cosine matrices, spherical/affine classification,
// enumeration of finite Coxeter groups through the geometric representation,
// and the Coxeter complex built from cosets of maximal standard parabolics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "garland/complex.hpp"
#include "garland/errors.hpp"
#include "garland/linalg.hpp"
#include "garland/subspaces.hpp"

namespace garland {

/// m_{s,t}; std::nullopt stands for ∞.
using Gonality = std::optional<int>;

class CoxeterMatrix {
public:
    explicit CoxeterMatrix(std::vector<std::vector<Gonality>> m) : m_(std::move(m)) {
        const std::size_t r = m_.size();
        if (r == 0) throw ValidationError("CoxeterMatrix: rank must be positive");
        for (std::size_t i = 0; i < r; ++i) {
            if (m_[i].size() != r) throw ValidationError("CoxeterMatrix: row " + std::to_string(i) + " has the wrong length");
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (m_[i][i] != 1)
                throw ValidationError("CoxeterMatrix: diagonal entry " + std::to_string(i) + " must be 1");
            for (std::size_t j = 0; j < r; ++j) {
                if (i == j) continue;
                if (m_[i][j] != m_[j][i])
                    throw ValidationError("CoxeterMatrix: not symmetric at (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
                if (m_[i][j] && *m_[i][j] < 2)
                    throw ValidationError("CoxeterMatrix: off-diagonal entry (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") must be >= 2");
            }
        }
    }

    /// Finite entries only; convenient for literals.
    static CoxeterMatrix from_ints(const std::vector<std::vector<int>>& m) {
        std::vector<std::vector<Gonality>> g;
        for (const auto& row : m) g.emplace_back(row.begin(), row.end());
        return CoxeterMatrix(std::move(g));
    }

    /// Linear diagram s_0 - s_1 - ... with the given labels, all other pairs commuting.
    static CoxeterMatrix linear(const std::vector<Gonality>& labels) {
        const std::size_t r = labels.size() + 1;
        std::vector<std::vector<Gonality>> m(r, std::vector<Gonality>(r, 2));
        for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
        for (std::size_t i = 0; i + 1 < r; ++i) m[i][i + 1] = m[i + 1][i] = labels[i];
        return CoxeterMatrix(std::move(m));
    }

    std::size_t rank() const noexcept { return m_.size(); }
    Gonality operator()(std::size_t i, std::size_t j) const { return m_.at(i).at(j); }
    const std::vector<std::vector<Gonality>>& entries() const noexcept { return m_; }

    friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

private:
    std::vector<std::vector<Gonality>> m_;
};

/// cos(π/m), exact for the common small gonalities.
inline double cos_pi_over(int m) {
    switch (m) {
        case 1: return -1.0;
        case 2: return 0.0;
        case 3: return 0.5;
        case 4: return std::sqrt(0.5);
        case 6: return 0.5 * std::sqrt(3.0);
        default: return std::cos(std::numbers::pi / m);
    }
}

/// c_ij = -cos(π/m_ij), and -1 where m_ij = ∞.
inline CosineMatrix coxeter_cosine(const CoxeterMatrix& m) {
    SymMatrix c = SymMatrix::identity(m.rank());
    for (std::size_t i = 0; i < m.rank(); ++i)
        for (std::size_t j = i + 1; j < m.rank(); ++j) {
            const Gonality g = m(i, j);
            c.set(i, j, g ? 0.0 - cos_pi_over(*g) : -1.0);
        }
    return CosineMatrix(std::move(c));
}

enum class CoxeterClass { spherical, affine, other };

inline const char* to_string(CoxeterClass c) {
    switch (c) {
        case CoxeterClass::spherical: return "spherical";
        case CoxeterClass::affine: return "affine";
        case CoxeterClass::other: return "other";
    }
    return "?";
}

/// Spherical iff the cosine matrix is positive definite; affine iff it is
/// semidefinite of corank 1 with every proper principal submatrix positive
/// definite. Reducible semidefinite systems land in `other`.
inline CoxeterClass classify_coxeter(const CoxeterMatrix& m) {
    const CosineMatrix c = coxeter_cosine(m);
    const DefinitenessClass cls = classify_definiteness(c.matrix());
    if (cls.tag == Definiteness::positive_definite) return CoxeterClass::spherical;
    if (cls.tag != Definiteness::positive_semidefinite || cls.corank != 1) return CoxeterClass::other;
    // Interlacing: all proper principal submatrices are positive definite iff
    // the ones missing a single index are.
    for (std::size_t i = 0; i < m.rank(); ++i) {
        const SymMatrix sub = c.matrix().without_index(i);
        if (classify_definiteness(sub).tag != Definiteness::positive_definite) return CoxeterClass::other;
    }
    return CoxeterClass::affine;
}

/// Row-major rank x rank matrix of a group element in the geometric representation.
using GroupElement = std::vector<double>;

/// s acts by x ↦ x - 2 B(x, e_s) e_s with B the cosine matrix.
inline GroupElement generator_matrix(const CosineMatrix& c, std::size_t s) {
    const std::size_t r = c.dim();
    GroupElement g(r * r, 0.0);
    for (std::size_t i = 0; i < r; ++i) g[i * r + i] = 1.0;
    for (std::size_t j = 0; j < r; ++j) g[s * r + j] -= 2.0 * c(s, j);
    return g;
}

inline GroupElement multiply(const GroupElement& a, const GroupElement& b, std::size_t r) {
    GroupElement out(r * r, 0.0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) {
            const double aik = a[i * r + k];
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < r; ++j) out[i * r + j] += aik * b[k * r + j];
        }
    return out;
}

struct GroupEnumeration {
    std::size_t rank = 0;
    std::vector<GroupElement> elements;            // elements[0] is the identity
    std::vector<std::vector<std::size_t>> neighbor;  // neighbor[w][s] = index of w·s

    std::size_t order() const noexcept { return elements.size(); }
};

inline constexpr std::size_t kDefaultEnumerationCap = 10000;

/// Breadth-first closure under right multiplication by the generators.
/// Elements are identified after rounding entries to a 1e-9 grid.
inline GroupEnumeration enumerate_group(const CoxeterMatrix& m, std::size_t cap = kDefaultEnumerationCap) {
    if (cap == 0) throw ValidationError("enumerate_group: cap must be at least 1");
    const std::size_t r = m.rank();
    const CosineMatrix c = coxeter_cosine(m);
    std::vector<GroupElement> gens;
    for (std::size_t s = 0; s < r; ++s) gens.push_back(generator_matrix(c, s));

    auto key_of = [](const GroupElement& g) {
        std::vector<std::int64_t> key(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) key[i] = std::llround(g[i] * 1e9);
        return key;
    };

    GroupEnumeration out;
    out.rank = r;
    GroupElement identity(r * r, 0.0);
    for (std::size_t i = 0; i < r; ++i) identity[i * r + i] = 1.0;
    std::map<std::vector<std::int64_t>, std::size_t> index;
    index.emplace(key_of(identity), 0);
    out.elements.push_back(std::move(identity));
    out.neighbor.emplace_back(r, 0);

    for (std::size_t w = 0; w < out.elements.size(); ++w) {
        for (std::size_t s = 0; s < r; ++s) {
            GroupElement next = multiply(out.elements[w], gens[s], r);
            auto [it, fresh] = index.emplace(key_of(next), out.elements.size());
            if (fresh) {
                if (out.elements.size() >= cap)
                    throw EnumerationCapError("group not enumerated (likely infinite): more than " +
                                              std::to_string(cap) + " elements");
                out.elements.push_back(std::move(next));
                out.neighbor.emplace_back(r, 0);
            }
            out.neighbor[w][s] = it->second;
        }
    }
    return out;
}

struct CoxeterComplex {
    GroupEnumeration group;
    PartiteComplex complex;  // facet w corresponds to group element w
};

/// Vertices of type i are the cosets w·W_{S∖{s_i}}; chamber w is the facet of
/// its cosets.
inline CoxeterComplex build_coxeter_complex(const CoxeterMatrix& m, std::size_t cap = kDefaultEnumerationCap) {
    GroupEnumeration group = enumerate_group(m, cap);
    const std::size_t r = m.rank();
    const std::size_t order = group.order();

    std::vector<std::vector<VertexId>> facets(order, std::vector<VertexId>(r));
    std::vector<VertexSpec> vertices;
    VertexId next_id = 0;
    for (std::size_t type = 0; type < r; ++type) {
        std::vector<std::size_t> parent(order);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        for (std::size_t w = 0; w < order; ++w)
            for (std::size_t s = 0; s < r; ++s)
                if (s != type) parent[find(w)] = find(group.neighbor[w][s]);
        std::map<std::size_t, VertexId> id_of_root;
        for (std::size_t w = 0; w < order; ++w) {
            auto [it, fresh] = id_of_root.emplace(find(w), next_id);
            if (fresh) {
                vertices.push_back({next_id, static_cast<int>(type)});
                ++next_id;
            }
            facets[w][type] = it->second;
        }
    }
    PartiteComplex complex(static_cast<int>(r) - 1, std::move(vertices), std::move(facets));
    return {std::move(group), std::move(complex)};
}

struct LinkCycleCheck {
    std::size_t type_i = 0;
    std::size_t type_j = 0;
    int gonality = 0;
    std::size_t expected_length = 0;  // 2 m_ij
    std::size_t links_checked = 0;
    bool all_cycles = false;
};

struct CoxeterComplexCheck {
    std::size_t group_order = 0;
    ComplexCosineReport complex_report;
    CosineMatrix coxeter;
    double max_deviation = 0.0;
    std::vector<LinkCycleCheck> links;
    bool passed = false;
};

/// True iff g is a single cycle on exactly `length` vertices.
inline bool is_cycle_of_length(const LinkGraph& g, std::size_t length) {
    if (g.size() != length || g.edges.size() != length || !g.connected()) return false;
    const auto deg = g.degrees();
    return std::all_of(deg.begin(), deg.end(), [](std::size_t d) { return d == 2; });
}

/// Builds Σ(W,S) for a spherical system, compares its complex cosine matrix
/// with the Coxeter cosine matrix and checks that every link of type {i,j} is
/// a 2 m_ij-gon.
inline CoxeterComplexCheck coxeter_complex_cosine_check(const CoxeterMatrix& m,
                                                        std::size_t cap = kDefaultEnumerationCap) {
    if (classify_coxeter(m) != CoxeterClass::spherical)
        throw CriterionError("coxeter_complex_cosine_check: Coxeter system is not spherical");
    if (m.rank() < 2) throw CriterionError("coxeter_complex_cosine_check: rank must be at least 2");
    const CoxeterComplex cc = build_coxeter_complex(m, cap);
    const PartiteComplex& x = cc.complex;
    const std::size_t r = m.rank();

    CoxeterComplexCheck out{cc.group.order(), cosine_matrix_of_complex(x), coxeter_cosine(m), 0.0, {}, false};
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            out.max_deviation =
                std::max(out.max_deviation, std::abs(out.complex_report.matrix(i, j) - out.coxeter(i, j)));

    bool cycles_ok = true;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            LinkCycleCheck lc;
            lc.type_i = i;
            lc.type_j = j;
            lc.gonality = *m(i, j);
            lc.expected_length = 2 * static_cast<std::size_t>(lc.gonality);
            lc.all_cycles = true;
            std::set<Simplex> reps;
            for (const auto& f : x.facets()) {
                Simplex s;
                for (std::size_t p = 0; p < r; ++p)
                    if (p != i && p != j) s.push_back(f[p]);
                reps.insert(make_simplex(std::move(s)));
            }
            for (const auto& sigma : reps) {
                const LinkGraph g = LinkGraph::from_complex(sigma.empty() ? x : link_of(x, sigma));
                lc.all_cycles = lc.all_cycles && is_cycle_of_length(g, lc.expected_length);
                ++lc.links_checked;
            }
            cycles_ok = cycles_ok && lc.all_cycles;
            out.links.push_back(lc);
        }
    }
    out.passed = cycles_ok && out.max_deviation <= 1e-9;
    return out;
}

}  // namespace garland
