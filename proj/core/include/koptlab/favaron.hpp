#pragma once

// k-dependent / k-dominating sets, the potential phi_k(D) = k|D| - |E(G[D])|,
// k-optimal sets, and the constructive side of the matching property of
// k-optimal sets: either the demanded k-edge-chromatic subgraph exists, or the
// Hall violator yields a set with strictly larger potential.

#include <variant>
#include <vector>

#include "koptlab/caps.hpp"
#include "koptlab/graph.hpp"
#include "koptlab/matching.hpp"

namespace koptlab {

struct OptimalSetResult {
    enum class Certificate { exhaustive, local_maximum };

    VertexSet d;
    int phi = 0;
    Certificate certificate = Certificate::exhaustive;
};

int phi_k(const Graph& g, int k, const VertexSet& d);
bool is_k_dependent(const Graph& g, int k, const VertexSet& d);
bool is_k_dominating(const Graph& g, int k, const VertexSet& d);

/// Removes a vertex of maximum induced degree (smallest index on ties) while the
/// induced degree is >= k. The result is k-dependent and never has smaller phi_k.
VertexSet prune_to_dependent(const Graph& g, int k, const VertexSet& t);

/// Global maximizer of phi_k over k-dependent sets; lexicographically least on ties.
OptimalSetResult k_optimal_exhaustive(const Graph& g, int k, const Caps& caps = default_caps());

/// Every k-dependent set attaining the maximum of phi_k, in lexicographic order.
std::vector<VertexSet> all_k_optimal_sets(const Graph& g, int k, const Caps& caps = default_caps());

/// max phi_k over k-dependent sets (the graph-level value).
int phi_k_max(const Graph& g, int k, const Caps& caps = default_caps());

/// Orientation conventions: an orientation "of G[X]" has base
/// induced_subgraph(g, X).graph, so its vertex i stands for the i-th smallest
/// member of X.
Orientation orientation_of_outside(const Graph& g, const VertexSet& d, const std::vector<Arc>& arcs_in_g);

/// Demands max{0, k - outdegree} on X, zero on D.
DemandProfile theorem_demands(const Graph& g, int k, const VertexSet& d, const Orientation& j);

struct Improved {
    VertexSet d;
};

struct NoViolation {
    KEdgeChromaticSubgraph m;
};

using ImproveOutcome = std::variant<Improved, NoViolation>;

/// One step of the improvement argument. On a Hall violation S, forms
/// B = {v in D : |N(v) cap S| <= k-1} and returns prune_to_dependent(B u S),
/// whose phi_k is strictly larger than that of d (asserted).
ImproveOutcome improve_once(const Graph& g, int k, const VertexSet& d, const Orientation& j);

/// Smallest-last degeneracy order, edges directed from the earlier-removed endpoint.
Orientation degeneracy_orientation(const Graph& g);

/// Iterates improve_once from the empty set until no orientation in the policy
/// yields an improvement. All orientations of G[X] are tried when G[X] has at
/// most `exhaustive_edges` edges; otherwise the degeneracy orientation plus,
/// for every x, the variant making x a sink.
OptimalSetResult k_optimal_local(const Graph& g, int k, std::size_t exhaustive_edges = 12);

/// For a k-optimal d and any orientation j of G[X]: a k-edge-chromatic subgraph of
/// the D-X cross edges with d_M(v) + outdeg_j(v) >= k on X. An infeasible engine
/// verdict is raised as Counterexample.
KEdgeChromaticSubgraph verify_theorem_main(const Graph& g, int k, const VertexSet& d, const Orientation& j);

/// k pairwise disjoint matchings from the independent set s into d, each saturating s.
std::vector<std::vector<Edge>> matchings_into_d(const Graph& g, int k, const VertexSet& d, const VertexSet& s);

/// For a maximum independent d: a matching saturating every vertex outside d
/// (greedy maximal matching in G[V-d] plus a Hall matching of the leftovers into d).
std::vector<Edge> saturating_matching_complement(const Graph& g, const VertexSet& d);

int gamma_k(const Graph& g, int k, const Caps& caps = default_caps());
int alpha_k(const Graph& g, int k, const Caps& caps = default_caps());

}  // namespace koptlab
