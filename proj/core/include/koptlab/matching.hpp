#pragma once

// Degree-constrained bipartite subgraphs: given a D/X split, demands d_i <= k on
// the X side, decide whether some subgraph of the cross edges is properly
// k-edge-colorable with every x_i of degree >= d_i, and produce either the
// colored subgraph or a Hall-type violating set.

#include <cstddef>
#include <variant>
#include <vector>

#include "koptlab/graph.hpp"

namespace koptlab {

/// Per-vertex demands, clamped into [0, k]. Only X-side entries are consulted.
class DemandProfile {
public:
    DemandProfile(int k, std::vector<int> demands);
    /// Every vertex demands k.
    static DemandProfile uniform(int k, int vertex_count);

    int k() const { return k_; }
    int demand(Vertex v) const { return demands_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& demands() const { return demands_; }

private:
    int k_;
    std::vector<int> demands_;
};

struct ColoredEdge {
    Edge edge;
    int color = 0;  // 1..k

    friend auto operator<=>(const ColoredEdge&, const ColoredEdge&) = default;
};

/// Edge subset of `base` with a proper coloring into at most k matchings.
class KEdgeChromaticSubgraph {
public:
    KEdgeChromaticSubgraph() = default;
    /// Throws ContractViolation if an edge is missing from base, a color is outside
    /// 1..k, an edge repeats, or two edges sharing a vertex share a color.
    KEdgeChromaticSubgraph(Graph base, int k, std::vector<ColoredEdge> edges);

    const Graph& base() const { return base_; }
    int k() const { return k_; }
    const std::vector<ColoredEdge>& edges() const { return edges_; }
    std::size_t size() const { return edges_.size(); }
    int degree(Vertex v) const;
    bool covers(Vertex v, int color) const;
    /// Edges of color c, ascending.
    std::vector<Edge> color_class(int c) const;

private:
    Graph base_;
    int k_ = 0;
    std::vector<ColoredEdge> edges_;
};

/// True iff no two edges sharing a vertex carry the same color and all colors lie in 1..k.
bool is_proper_coloring(int vertex_count, int k, const std::vector<ColoredEdge>& edges);

struct HallViolator {
    VertexSet s;     // subset of the X side
    int deficiency;  // sum of demands over s minus sum over D of min(k, |N(v) cap s|)
};

struct Feasible {
    KEdgeChromaticSubgraph m;
};

struct Infeasible {
    HallViolator violator;
};

struct LebensoldOutcome {
    std::variant<Feasible, Infeasible> verdict;
    int flow_value = 0;
    int total_demand = 0;

    bool feasible() const { return std::holds_alternative<Feasible>(verdict); }
    const KEdgeChromaticSubgraph& subgraph() const { return std::get<Feasible>(verdict).m; }
    const HallViolator& violator() const { return std::get<Infeasible>(verdict).violator; }
};

/// Sum over D of min(k, |N(v) cap s|) restricted to cross edges.
int lebensold_capacity(const BipartiteSplit& split, int k, const VertexSet& s);

/// Max-flow formulation: source -> x_i (cap d_i), x_i -> neighbor in D (cap 1),
/// D vertex -> sink (cap k). Feasible iff the flow saturates every demand; the
/// flow edges are then König-colored. Otherwise the X vertices reachable from the
/// source in the final residual network form the violator.
LebensoldOutcome check_generalized_lebensold(const BipartiteSplit& split, const DemandProfile& profile);

/// All demands equal to k: k disjoint matchings each saturating X.
LebensoldOutcome lebensold_classic(const BipartiteSplit& split, int k);

/// Proper edge coloring of a bipartite graph with max degree <= k using colors 1..k,
/// by alternating-path recoloring. Throws ContractViolation otherwise.
KEdgeChromaticSubgraph konig_color(const Graph& bipartite, int k);

/// Attaches k - d_i fresh pendant D-side vertices to every x_i. New vertices are
/// appended after the base vertices in X order.
BipartiteSplit auxiliary_extension(const BipartiteSplit& split, const DemandProfile& profile);

/// Maximum matching in a general graph (Edmonds' blossom algorithm). Edges ascending.
std::vector<Edge> maximum_matching(const Graph& g);

}  // namespace koptlab
