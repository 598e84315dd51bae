#pragma once

// Pure partite simplicial complexes stored by their facets, links of simplices,
// simple random walks on 1-dimensional links, and the cosine matrix of a
// complex built from the second eigenvalues of those walks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "garland/errors.hpp"
#include "garland/linalg.hpp"
#include "garland/subspaces.hpp"

namespace garland {

using VertexId = std::int64_t;
/// A simplex as a set of vertex ids, kept sorted ascending.
using Simplex = std::vector<VertexId>;

struct VertexSpec {
    VertexId id;
    int type;

    friend bool operator==(const VertexSpec&, const VertexSpec&) = default;
};

inline std::string to_string(const Simplex& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "]";
}

inline Simplex make_simplex(std::vector<VertexId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

/// Pure n-dimensional complex whose facets carry exactly one vertex of each
/// type. The types are arbitrary integer labels (a link keeps the labels of
/// its parent); a fresh complex uses 0..n.
class PartiteComplex {
public:
    PartiteComplex(int n, std::vector<VertexSpec> vertices, std::vector<std::vector<VertexId>> facets)
        : PartiteComplex(default_labels(n), std::move(vertices), std::move(facets)) {}

    PartiteComplex(std::vector<int> type_labels, std::vector<VertexSpec> vertices,
                   std::vector<std::vector<VertexId>> facets)
        : labels_(std::move(type_labels)), vertices_(std::move(vertices)),
          cache_(std::make_shared<FaceCache>()) {
        std::sort(labels_.begin(), labels_.end());
        if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
            throw ValidationError("PartiteComplex: repeated type label");
        for (std::size_t p = 0; p < labels_.size(); ++p) position_of_label_[labels_[p]] = p;

        for (const auto& v : vertices_) {
            if (!position_of_label_.contains(v.type))
                throw ValidationError("PartiteComplex: vertex " + std::to_string(v.id) + " has type " +
                                      std::to_string(v.type) + " outside the complex's types");
            if (!type_of_.emplace(v.id, v.type).second)
                throw ValidationError("PartiteComplex: duplicate vertex id " + std::to_string(v.id));
        }

        std::set<Simplex> seen;
        facets_.reserve(facets.size());
        for (std::size_t f = 0; f < facets.size(); ++f) {
            const auto& raw = facets[f];
            auto describe = [&] { return "facet #" + std::to_string(f) + " " + to_string(raw); };
            if (raw.size() != labels_.size())
                throw ValidationError("PartiteComplex: " + describe() + " has " + std::to_string(raw.size()) +
                                      " vertices, expected " + std::to_string(labels_.size()));
            std::vector<VertexId> by_type(labels_.size());
            std::vector<bool> filled(labels_.size(), false);
            for (VertexId id : raw) {
                auto it = type_of_.find(id);
                if (it == type_of_.end())
                    throw ValidationError("PartiteComplex: " + describe() + " uses unknown vertex " +
                                          std::to_string(id));
                const std::size_t p = position_of_label_.at(it->second);
                if (filled[p])
                    throw ValidationError("PartiteComplex: " + describe() + " repeats type " +
                                          std::to_string(it->second));
                filled[p] = true;
                by_type[p] = id;
            }
            if (!seen.insert(make_simplex(raw)).second)
                throw ValidationError("PartiteComplex: " + describe() + " is a duplicate");
            facets_.push_back(std::move(by_type));
        }
        facet_sets_.assign(seen.begin(), seen.end());
        for (std::size_t f = 0; f < facet_sets_.size(); ++f)
            for (VertexId id : facet_sets_[f]) incidence_[id].push_back(f);
    }

    int n() const noexcept { return static_cast<int>(labels_.size()) - 1; }
    const std::vector<int>& type_labels() const noexcept { return labels_; }
    const std::vector<VertexSpec>& vertices() const noexcept { return vertices_; }
    /// Facets with entries ordered by type position.
    const std::vector<std::vector<VertexId>>& facets() const noexcept { return facets_; }
    std::size_t facet_count() const noexcept { return facets_.size(); }

    int type_of(VertexId id) const {
        auto it = type_of_.find(id);
        if (it == type_of_.end()) throw ValidationError("unknown vertex " + std::to_string(id));
        return it->second;
    }

    std::size_t position_of_type(int label) const { return position_of_label_.at(label); }

    std::vector<int> type_set(const Simplex& s) const {
        std::vector<int> out;
        for (VertexId id : s) out.push_back(type_of(id));
        std::sort(out.begin(), out.end());
        return out;
    }

    bool has_simplex(const Simplex& s) const {
        if (s.empty()) return !facets_.empty();
        auto it = incidence_.find(s.front());
        if (it == incidence_.end()) return false;
        for (std::size_t f : it->second)
            if (std::includes(facet_sets_[f].begin(), facet_sets_[f].end(), s.begin(), s.end())) return true;
        return false;
    }

    /// Facets (as sorted id sets) containing s.
    std::vector<Simplex> facets_containing(const Simplex& s) const {
        std::vector<Simplex> out;
        if (s.empty()) return facet_sets_;
        auto it = incidence_.find(s.front());
        if (it == incidence_.end()) return out;
        for (std::size_t f : it->second)
            if (std::includes(facet_sets_[f].begin(), facet_sets_[f].end(), s.begin(), s.end()))
                out.push_back(facet_sets_[f]);
        return out;
    }

    /// All k-simplices, -1 <= k <= n, generated from the facets and memoized.
    const std::vector<Simplex>& simplices_of_dim(int k) const {
        if (k < -1 || k > n()) throw ValidationError("simplices_of_dim: dimension out of range");
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->by_dim.find(k);
        if (it != cache_->by_dim.end()) return it->second;
        std::set<Simplex> faces;
        const auto size = static_cast<std::size_t>(k + 1);
        for (const auto& f : facet_sets_) {
            // Choose `size` of the n+1 vertices.
            std::vector<bool> pick(f.size(), false);
            std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
            do {
                Simplex s;
                for (std::size_t i = 0; i < f.size(); ++i)
                    if (pick[i]) s.push_back(f[i]);
                faces.insert(std::move(s));
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
        if (facet_sets_.empty() && k == -1) faces.insert(Simplex{});
        return cache_->by_dim.emplace(k, std::vector<Simplex>(faces.begin(), faces.end())).first->second;
    }

private:
    struct FaceCache {
        std::mutex mutex;
        std::map<int, std::vector<Simplex>> by_dim;
    };

    static std::vector<int> default_labels(int n) {
        if (n < -1) throw ValidationError("PartiteComplex: dimension must be at least -1");
        std::vector<int> labels(static_cast<std::size_t>(n + 1));
        std::iota(labels.begin(), labels.end(), 0);
        return labels;
    }

    std::vector<int> labels_;
    std::vector<VertexSpec> vertices_;
    std::map<int, std::size_t> position_of_label_;
    std::unordered_map<VertexId, int> type_of_;
    std::vector<std::vector<VertexId>> facets_;
    std::vector<Simplex> facet_sets_;
    std::unordered_map<VertexId, std::vector<std::size_t>> incidence_;
    std::shared_ptr<FaceCache> cache_;
};

/// X_σ = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ X}, with inherited types.
inline PartiteComplex link_of(const PartiteComplex& x, const Simplex& sigma_in) {
    const Simplex sigma = make_simplex(sigma_in);
    if (sigma.size() != sigma_in.size() || !x.has_simplex(sigma))
        throw ValidationError("link_of: " + to_string(sigma_in) + " is not a simplex of the complex");

    const std::vector<int> removed = x.type_set(sigma);
    std::vector<int> labels;
    for (int t : x.type_labels())
        if (!std::binary_search(removed.begin(), removed.end(), t)) labels.push_back(t);

    std::vector<std::vector<VertexId>> facets;
    std::set<VertexId> used;
    for (const auto& f : x.facets_containing(sigma)) {
        std::vector<VertexId> rest;
        std::set_difference(f.begin(), f.end(), sigma.begin(), sigma.end(), std::back_inserter(rest));
        used.insert(rest.begin(), rest.end());
        facets.push_back(std::move(rest));
    }
    std::vector<VertexSpec> vertices;
    for (VertexId id : used) vertices.push_back({id, x.type_of(id)});
    return PartiteComplex(std::move(labels), std::move(vertices), std::move(facets));
}

/// Facets joined when they share a codimension-1 face; true iff one class.
inline bool gallery_connected(const PartiteComplex& x) {
    const std::size_t count = x.facet_count();
    if (count <= 1) return true;
    std::vector<std::size_t> parent(count);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    const auto width = static_cast<std::size_t>(x.n() + 1);
    for (std::size_t p = 0; p < width; ++p) {
        std::map<std::vector<VertexId>, std::size_t> first_with_panel;
        for (std::size_t f = 0; f < count; ++f) {
            std::vector<VertexId> panel = x.facets()[f];
            panel.erase(panel.begin() + static_cast<std::ptrdiff_t>(p));
            auto [it, fresh] = first_with_panel.emplace(std::move(panel), f);
            if (!fresh) parent[find(f)] = find(it->second);
        }
    }
    const std::size_t root = find(0);
    for (std::size_t f = 1; f < count; ++f)
        if (find(f) != root) return false;
    return true;
}

/// Minimum number of facets through an (n-1)-simplex.
inline std::size_t thickness(const PartiteComplex& x) {
    if (x.n() < 0) throw ValidationError("thickness: complex has no panels");
    if (x.facet_count() == 0) return 0;
    const auto width = static_cast<std::size_t>(x.n() + 1);
    std::map<std::pair<std::size_t, std::vector<VertexId>>, std::size_t> panel_count;
    for (const auto& f : x.facets())
        for (std::size_t p = 0; p < width; ++p) {
            std::vector<VertexId> panel = f;
            panel.erase(panel.begin() + static_cast<std::ptrdiff_t>(p));
            ++panel_count[{p, std::move(panel)}];
        }
    std::size_t best = x.facet_count();
    for (const auto& [key, c] : panel_count) best = std::min(best, c);
    return best;
}

struct ComplexValidation {
    bool partite = true;   // enforced on construction
    bool pure = true;      // every listed vertex lies in a facet
    bool b1 = true;        // finite input: 1-dimensional links are finite
    bool b2 = true;        // links of dimension >= 1 (and the complex) are gallery connected
    std::optional<Simplex> b2_failure;
    std::vector<std::string> notes;
};

inline ComplexValidation validate_complex(const PartiteComplex& x) {
    ComplexValidation r;
    for (const auto& v : x.vertices())
        if (!x.has_simplex({v.id})) {
            r.pure = false;
            r.notes.push_back("vertex " + std::to_string(v.id) + " lies in no facet");
        }
    r.notes.push_back("B1 holds for every finite input");
    r.notes.push_back("B3 (links finite or contractible) and B4 (transitive type-preserving action) are not checkable");
    for (int k = -1; k <= x.n() - 2 && r.b2; ++k) {
        for (const auto& sigma : x.simplices_of_dim(k)) {
            if (!gallery_connected(link_of(x, sigma))) {
                r.b2 = false;
                r.b2_failure = sigma;
                r.notes.push_back("link of " + to_string(sigma) + " is not gallery connected");
                break;
            }
        }
    }
    return r;
}

/// Graph of a 1-dimensional link.
struct LinkGraph {
    std::vector<VertexId> vertices;
    std::vector<int> types;  // empty when the graph was given without types
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    static LinkGraph from_complex(const PartiteComplex& x) {
        if (x.n() != 1)
            throw ValidationError("LinkGraph: complex has dimension " + std::to_string(x.n()) + ", expected 1");
        LinkGraph g;
        std::unordered_map<VertexId, std::size_t> index;
        for (const auto& v : x.vertices()) {
            index.emplace(v.id, g.vertices.size());
            g.vertices.push_back(v.id);
            g.types.push_back(v.type);
        }
        for (const auto& f : x.facets()) g.edges.emplace_back(index.at(f[0]), index.at(f[1]));
        return g;
    }

    /// Simple graph on vertices 0..count-1.
    static LinkGraph from_edges(std::size_t count, std::vector<std::pair<std::size_t, std::size_t>> edges) {
        LinkGraph g;
        g.vertices.resize(count);
        std::iota(g.vertices.begin(), g.vertices.end(), VertexId{0});
        for (const auto& [a, b] : edges)
            if (a >= count || b >= count || a == b)
                throw ValidationError("LinkGraph: bad edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
        g.edges = std::move(edges);
        return g;
    }

    std::size_t size() const noexcept { return vertices.size(); }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> d(size(), 0);
        for (const auto& [a, b] : edges) ++d[a], ++d[b];
        return d;
    }

    std::vector<std::vector<std::size_t>> adjacency() const {
        std::vector<std::vector<std::size_t>> adj(size());
        for (const auto& [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return adj;
    }

    /// BFS distances from `source`; unreachable vertices get SIZE_MAX.
    std::vector<std::size_t> distances_from(std::size_t source) const {
        const auto adj = adjacency();
        std::vector<std::size_t> dist(size(), static_cast<std::size_t>(-1));
        std::queue<std::size_t> q;
        dist[source] = 0;
        q.push(source);
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            for (std::size_t w : adj[u])
                if (dist[w] == static_cast<std::size_t>(-1)) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
        }
        return dist;
    }

    bool connected() const {
        if (size() == 0) return true;
        const auto d = distances_from(0);
        return std::none_of(d.begin(), d.end(), [](std::size_t x) { return x == static_cast<std::size_t>(-1); });
    }

    std::size_t diameter() const {
        std::size_t best = 0;
        for (std::size_t s = 0; s < size(); ++s)
            for (std::size_t x : distances_from(s)) best = std::max(best, x);
        return best;
    }
};

/// Spectrum of the simple random walk, via the similar symmetric matrix
/// a(u,v) / sqrt(d(u) d(v)).
inline Spectrum random_walk_spectrum(const LinkGraph& g) {
    if (g.size() == 0) throw ValidationError("random walk: empty graph");
    const auto deg = g.degrees();
    for (std::size_t v = 0; v < g.size(); ++v)
        if (deg[v] == 0)
            throw ValidationError("random walk: vertex " + std::to_string(g.vertices[v]) + " has degree 0");
    SymMatrix s(g.size());
    for (const auto& [a, b] : g.edges)
        s.set(a, b, s(a, b) + 1.0 / std::sqrt(static_cast<double>(deg[a]) * static_cast<double>(deg[b])));
    return sym_eigs(s);
}

/// Second largest eigenvalue of the simple random walk on a connected graph.
inline double random_walk_second_eig(const LinkGraph& g) {
    if (!g.connected()) throw NotConnectedError("link not connected (violates B2)");
    const Spectrum s = random_walk_spectrum(g);
    if (s.eigenvalues.size() < 2) throw ValidationError("random walk: graph has a single vertex");
    return s.eigenvalues[s.eigenvalues.size() - 2];
}

struct PairSpectrum {
    int type_i = 0;
    int type_j = 0;
    double lambda = 0.0;            // maximum over representatives
    std::size_t representatives = 0;
    double disagreement = 0.0;      // max - min over representatives
    std::size_t link_diameter = 0;  // largest over representatives
};

struct ComplexCosineReport {
    CosineMatrix matrix;
    std::vector<PairSpectrum> per_pair;
    DefinitenessClass definiteness;
    double min_eigenvalue = 0.0;
    bool degenerate = false;  // n = 1: the complex is itself the only link
    std::vector<std::string> notes;
};

/// Cosine matrix of a partite complex: A_ii = 1, A_ij = -λ_ij where λ_ij is the
/// second eigenvalue of the random walk on links of cotype {i,j}. Over several
/// representatives the maximum λ is used and the spread is reported.
inline ComplexCosineReport cosine_matrix_of_complex(const PartiteComplex& x) {
    if (x.n() < 1) throw ValidationError("cosine_matrix_of_complex: complex must have dimension >= 1");
    if (x.facet_count() == 0) throw ValidationError("cosine_matrix_of_complex: complex has no facets");
    const auto width = static_cast<std::size_t>(x.n() + 1);
    SymMatrix a = SymMatrix::identity(width);
    std::vector<PairSpectrum> pairs;
    std::vector<std::string> notes;

    auto lambda_of = [](const PartiteComplex& link, const Simplex& sigma) {
        const LinkGraph g = LinkGraph::from_complex(link);
        try {
            return std::pair{random_walk_second_eig(g), g.diameter()};
        } catch (const NotConnectedError&) {
            throw NotConnectedError("link of simplex " + to_string(sigma) + " is not connected (violates B2)");
        }
    };

    for (std::size_t i = 0; i < width; ++i) {
        for (std::size_t j = i + 1; j < width; ++j) {
            std::set<Simplex> reps;
            for (const auto& f : x.facets()) {
                Simplex s;
                for (std::size_t p = 0; p < width; ++p)
                    if (p != i && p != j) s.push_back(f[p]);
                reps.insert(make_simplex(std::move(s)));
            }
            PairSpectrum ps;
            ps.type_i = x.type_labels()[i];
            ps.type_j = x.type_labels()[j];
            double lo = 0.0;
            bool first = true;
            for (const auto& sigma : reps) {
                const auto [lam, diam] = sigma.empty() ? lambda_of(x, sigma) : lambda_of(link_of(x, sigma), sigma);
                if (first) {
                    ps.lambda = lo = lam;
                    first = false;
                } else {
                    ps.lambda = std::max(ps.lambda, lam);
                    lo = std::min(lo, lam);
                }
                ps.link_diameter = std::max(ps.link_diameter, diam);
            }
            ps.representatives = reps.size();
            ps.disagreement = ps.lambda - lo;
            a.set(i, j, -std::clamp(ps.lambda, 0.0, 1.0));
            pairs.push_back(ps);
        }
    }

    const bool degenerate = x.n() == 1;
    if (degenerate) notes.push_back("dimension 1: the complex is its own single link");
    notes.push_back("lambda per type pair is the maximum over all codimension-2 representatives");

    CosineMatrix cm(std::move(a));
    const Spectrum s = sym_eigs(cm.matrix());
    DefinitenessClass cls = classify_spectrum(s.eigenvalues, default_zero_tol(cm.matrix()));
    return {std::move(cm), std::move(pairs), cls, s.min(), degenerate, std::move(notes)};
}

}  // namespace garland
