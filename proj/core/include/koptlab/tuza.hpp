#pragma once

// Triangle packing and covering, maximum k-edge-colorable subgraphs, and the
// translations between them on joins I_k v H with H triangle-free.

#include <array>
#include <vector>

#include "koptlab/caps.hpp"
#include "koptlab/graph.hpp"
#include "koptlab/matching.hpp"

namespace koptlab {

using Triangle = std::array<Vertex, 3>;

struct TrianglePacking {
    std::vector<Triangle> triangles;  // sorted triples, ascending
    std::size_t size() const { return triangles.size(); }
};

struct TriangleCover {
    std::vector<Edge> edges;  // ascending
    std::size_t size() const { return edges.size(); }
};

/// Every triple is a triangle of g and no two share an edge.
bool is_valid_packing(const Graph& g, const TrianglePacking& p);
/// Every cover edge is in g and g minus the cover is triangle-free.
bool is_valid_cover(const Graph& g, const TriangleCover& c);

/// Maximum edge-disjoint triangle packing by branch and bound.
TrianglePacking nu_exact(const Graph& g, const Caps& caps = default_caps());

/// Minimum triangle edge cover by branch and bound, bounded below by a greedy
/// packing of the triangles it still has to hit.
TriangleCover tau_exact(const Graph& g, const Caps& caps = default_caps());

/// Largest k-edge-colorable subgraph. k = 1 goes through maximum_matching.
KEdgeChromaticSubgraph alpha_k_prime(const Graph& g, int k, const Caps& caps = default_caps());

/// Heuristic lower bound: k rounds of greedy maximal matchings on the leftover edges.
KEdgeChromaticSubgraph greedy_k_matchings(const Graph& g, int k);

/// Proper edge coloring with at most max_degree + 1 colors (fan rotation and
/// alternating path inversion). The result's k() is max_degree + 1.
KEdgeChromaticSubgraph vizing_color(const Graph& g);

/// Color class i of m becomes the triangles through apex i - 1 of I_k v h.
TrianglePacking packing_from_coloring(const Graph& h, int k, const KEdgeChromaticSubgraph& m);

/// E(h[d]) plus every apex edge to V(h) - d, in I_k v h. Size k|V(h)| - phi_k(d).
TriangleCover cover_from_optimal_set(const Graph& h, int k, const VertexSet& d);

struct NormalizedCover {
    TriangleCover cover;
    VertexSet d;           // h-vertices whose edge to the chosen apex survives
    Vertex chosen_apex = 0;
};

/// Keeps the h-internal cover edges and gives every apex the deletion pattern of
/// the apex with the fewest deleted edges. Never larger than `cover`; still a cover.
NormalizedCover normalize_cover(const Graph& h, int k, const TriangleCover& cover);

struct TuzaConnectionReport {
    int k = 0;
    int n = 0;
    int nu = 0;           // nu(I_k v h), generic solver
    int tau = 0;          // tau(I_k v h), generic solver
    int alpha_prime = 0;  // alpha'_k(h)
    int phi_max = 0;      // max phi_k over k-dependent subsets of h
    TrianglePacking packing;
    TriangleCover cover;
    KEdgeChromaticSubgraph coloring;
    VertexSet optimal_set;
    bool translations_ok = false;  // packing_from_coloring / cover_from_optimal_set / normalize_cover agree

    bool nu_equality() const { return nu == alpha_prime; }
    bool tau_equality() const { return tau == k * n - phi_max; }
    bool special_tuza() const { return tau <= 2 * nu; }
    /// tau <= 2 nu restated through the two equalities: k|V| - phi <= 2 alpha'.
    bool special_tuza_equivalent() const { return 2 * alpha_prime >= k * n - phi_max; }
    /// The stronger alpha' >= k|V| - phi, without the factor 2. Fails already on C5, k = 2.
    bool special_tuza_unhalved() const { return alpha_prime >= k * n - phi_max; }
};

/// Both sides of nu(I_k v h) = alpha'_k(h) and tau(I_k v h) = k|V(h)| - phi_k(h),
/// computed independently. Refuses h containing a triangle.
TuzaConnectionReport verify_tuza_connection(const Graph& h, int k, const Caps& caps = default_caps());

/// Given a k-optimal d and a k-edge-chromatic subgraph in which every vertex
/// outside d has degree k, merges it class by class with a k-edge-coloring of
/// G[d] into T with 2|T| >= k|V| - phi_k(d). The counting chain is asserted.
KEdgeChromaticSubgraph edgetuza_pipeline(const Graph& g, int k, const VertexSet& d, const KEdgeChromaticSubgraph& saturating);

}  // namespace koptlab
