#pragma once

// List assignments and l-saturating partial edge colorings: every color in a
// vertex's list must appear on some edge at that vertex. Includes the
// elimination-order algorithm for chordal graphs and the merge that turns a
// saturating coloring of G[X] into a k-edge-chromatic subgraph with every
// X-vertex of degree k.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koptlab/caps.hpp"
#include "koptlab/graph.hpp"
#include "koptlab/matching.hpp"

namespace koptlab {

/// One sorted, duplicate-free list of positive colors per vertex.
class ListAssignment {
public:
    ListAssignment() = default;
    explicit ListAssignment(int vertex_count);
    /// Throws ContractViolation on non-positive colors; sorts and deduplicates.
    explicit ListAssignment(std::vector<std::vector<int>> lists);

    int vertex_count() const { return static_cast<int>(lists_.size()); }
    const std::vector<int>& of(Vertex v) const { return lists_[static_cast<std::size_t>(v)]; }
    const std::vector<std::vector<int>>& lists() const { return lists_; }
    int max_color() const;
    /// Distinct colors over all lists.
    std::vector<int> palette() const;

    /// "v: c1 c2 ..." per vertex, one line each.
    std::string serialize() const;
    /// Inverse of serialize. Missing vertices get empty lists.
    static ListAssignment parse(std::string_view text, int vertex_count);

    friend bool operator==(const ListAssignment&, const ListAssignment&) = default;

private:
    std::vector<std::vector<int>> lists_;
};

/// Color per base edge, 0 meaning uncolored. Proper when built through assign().
class PartialEdgeColoring {
public:
    PartialEdgeColoring() = default;
    explicit PartialEdgeColoring(Graph base);

    const Graph& base() const { return base_; }
    int color(std::size_t edge) const { return colors_[edge]; }
    int color(Vertex a, Vertex b) const { return colors_[base_.edge_index_or_throw(a, b)]; }
    /// Throws ContractViolation if the result would be improper.
    void assign(Vertex a, Vertex b, int c);
    void clear(Vertex a, Vertex b);
    bool has_color_at(Vertex v, int c) const;
    bool is_proper() const;
    std::vector<ColoredEdge> colored_edges() const;

private:
    Graph base_;
    std::vector<int> colors_;
};

/// Vertex order v_1, ..., v_n; position[v] is v's index in it.
struct EliminationOrder {
    std::vector<Vertex> order;
    std::vector<int> position;

    /// Throws ContractViolation unless `order` is a permutation of 0..n-1.
    static EliminationOrder from(std::vector<Vertex> order);
    /// Later neighbors of every vertex are pairwise adjacent.
    bool is_simplicial(const Graph& g) const;
};

/// True iff every c in l(v) appears on an edge at v. Throws on an improper psi.
bool is_saturating(const Graph& g, const ListAssignment& l, const PartialEdgeColoring& psi);

/// Exhaustive demand-driven search over proper partial colorings with list colors.
std::optional<PartialEdgeColoring> saturable_bruteforce(const Graph& g, const ListAssignment& l, const Caps& caps = default_caps());

/// Maximum cardinality search, reversed, then verified. nullopt iff g is not chordal.
std::optional<EliminationOrder> chordal_order(const Graph& g);

/// Every edge directed from its later endpoint to its earlier one.
Orientation order_orientation(const Graph& g, const EliminationOrder& ord);

/// Saturating coloring for lists with |l(v)| <= number of earlier neighbors of v.
/// Processes vertices in order, picking distinct representatives from the lists of
/// each vertex's later neighbors, then colors backwards. Short lists are padded
/// with colors above max_color() that are stripped at the end.
PartialEdgeColoring saturate_chordal(const Graph& g, const EliminationOrder& ord, const ListAssignment& l);

/// Produces an l-saturating coloring of `gx` (= G[X]) given the orientation used.
using SaturationWitness = std::function<PartialEdgeColoring(const Graph& gx, const ListAssignment& l, const Orientation& j)>;

/// saturate_chordal with the order that produced j; requires j to be order_orientation of chordal_order(gx).
PartialEdgeColoring chordal_witness(const Graph& gx, const ListAssignment& l, const Orientation& j);

/// For a k-optimal d and orientation j of G[X]: a k-edge-chromatic subgraph of g
/// in which every vertex outside d has degree exactly k. Step failures are raised
/// as Counterexample.
KEdgeChromaticSubgraph satur_pipeline(const Graph& g, int k, const VertexSet& d, const Orientation& j, const SaturationWitness& sat_witness);

/// satur_pipeline on a chordal g with the elimination-order orientation of G[X].
KEdgeChromaticSubgraph satur_pipeline_chordal(const Graph& g, int k, const VertexSet& d);

}  // namespace koptlab
