#pragma once

// Simple undirected graphs, orientations and vertex subsets. Vertices are the
// integers 0..n-1; every value here is immutable once built and safe to share
// across threads.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "koptlab/caps.hpp"

namespace koptlab {

using Vertex = int;

/// Unordered vertex pair, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    static Edge make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
    bool touches(Vertex w) const { return u == w || v == w; }
    bool meets(const Edge& o) const { return touches(o.u) || touches(o.v); }
    Vertex other(Vertex w) const { return w == u ? v : u; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Arc {
    Vertex tail = 0;
    Vertex head = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Subset of 0..universe-1 backed by a word bitset.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe);

    static VertexSet full(int universe);
    static VertexSet of(int universe, std::initializer_list<Vertex> members);
    static VertexSet from_members(int universe, std::span<const Vertex> members);
    /// Requires universe <= 64.
    static VertexSet from_mask(int universe, std::uint64_t mask);

    int universe() const { return universe_; }
    bool contains(Vertex v) const;
    void insert(Vertex v);
    void erase(Vertex v);
    int size() const;
    bool empty() const;
    std::vector<Vertex> members() const;
    /// Low 64 vertices as a mask; throws ContractViolation if universe > 64.
    std::uint64_t mask() const;

    VertexSet complement() const;
    int count_common(const VertexSet& other) const;
    bool is_subset_of(const VertexSet& other) const;

    VertexSet& operator|=(const VertexSet& o);
    VertexSet& operator&=(const VertexSet& o);
    VertexSet& operator-=(const VertexSet& o);
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    /// Lexicographic order on the sorted member lists.
    static bool lex_less(const VertexSet& a, const VertexSet& b);

private:
    void check(Vertex v) const;
    void trim();

    int universe_ = 0;
    std::vector<std::uint64_t> words_;
};

class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    /// Throws ContractViolation on loops, parallel edges or out-of-range endpoints.
    Graph(int n, std::vector<Edge> edges);

    static Graph complete(int n);
    static Graph cycle(int n);
    static Graph path(int n);
    static Graph star(int leaves);  // center is vertex 0
    static Graph complete_bipartite(int a, int b);

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    /// Sorted lexicographically; positions are the edge indices used everywhere else.
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_[i]; }
    bool adjacent(Vertex a, Vertex b) const;
    const VertexSet& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return neighbors(v).size(); }
    int max_degree() const;
    std::optional<std::size_t> edge_index(Vertex a, Vertex b) const;
    std::size_t edge_index_or_throw(Vertex a, Vertex b) const;
    /// Edge indices incident to v, ascending.
    std::vector<std::size_t> incident_edges(Vertex v) const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<VertexSet> adj_;
};

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_parent;  // new index -> original vertex, ascending
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

/// I_k v h: apexes are vertices 0..k-1, h's vertex w becomes k + w.
Graph join_independent(int k, const Graph& h);

Graph disjoint_union(const Graph& a, const Graph& b);

std::vector<std::array<Vertex, 3>> triangles(const Graph& g);
bool is_triangle_free(const Graph& g);

/// Two-colors g when bipartite; side[v] in {0, 1}.
std::optional<std::vector<int>> bipartition(const Graph& g);

bool is_connected(const Graph& g);

/// graph6 short form, n <= 62.
Graph parse_graph6(std::string_view text);
std::string to_graph6(const Graph& g);

/// "n m" followed by m lines "u v".
Graph parse_edge_list(std::string_view text);
std::string to_edge_list(const Graph& g);

class Orientation {
public:
    Orientation() = default;
    /// forward[i] directs edge i from its smaller to its larger endpoint.
    Orientation(Graph base, std::vector<bool> forward);
    Orientation(std::shared_ptr<const Graph> base, std::vector<bool> forward);
    /// Throws ContractViolation unless `arcs` orients every base edge exactly once.
    static Orientation from_arcs(Graph base, std::span<const Arc> arcs);
    /// Edge i reversed iff bit i of `bits` is set.
    static Orientation from_bits(std::shared_ptr<const Graph> base, std::uint64_t bits);

    const Graph& base() const { return *base_; }
    const std::shared_ptr<const Graph>& shared_base() const { return base_; }
    std::size_t arc_count() const { return forward_.size(); }
    Arc arc(std::size_t edge) const;
    std::vector<Arc> arcs() const;
    bool has_arc(Vertex tail, Vertex head) const;
    int outdegree(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }
    int indegree(Vertex v) const;
    std::vector<int> outdegrees() const { return out_; }
    std::vector<Vertex> out_neighbors(Vertex v) const;

    friend bool operator==(const Orientation& a, const Orientation& b) {
        return *a.base_ == *b.base_ && a.forward_ == b.forward_;
    }

private:
    std::shared_ptr<const Graph> base_ = std::make_shared<const Graph>();
    std::vector<bool> forward_;
    std::vector<int> out_;
};

/// Every orientation of a graph, ordered by the binary counter over edge indices
/// (bit i set = edge i reversed). Refuses graphs above caps.orientation_edges.
class AllOrientations {
public:
    explicit AllOrientations(const Graph& g, const Caps& caps = default_caps());

    class iterator {
    public:
        using value_type = Orientation;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator() = default;
        iterator(const AllOrientations* owner, std::uint64_t bits) : owner_(owner), bits_(bits) {}
        Orientation operator*() const { return Orientation::from_bits(owner_->base_, bits_); }
        iterator& operator++() {
            ++bits_;
            return *this;
        }
        iterator operator++(int) {
            auto copy = *this;
            ++bits_;
            return copy;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.bits_ == b.bits_; }

    private:
        const AllOrientations* owner_ = nullptr;
        std::uint64_t bits_ = 0;
    };

    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, count_}; }
    std::uint64_t size() const { return count_; }

private:
    std::shared_ptr<const Graph> base_;
    std::uint64_t count_ = 0;
};

inline AllOrientations orient_all(const Graph& g, const Caps& caps = default_caps()) {
    return AllOrientations(g, caps);
}

/// Base graph plus a D/X split; the cross edges are the base edges with exactly
/// one endpoint in D (the maximal bipartite subgraph between the two sides).
class BipartiteSplit {
public:
    BipartiteSplit(Graph base, VertexSet d_side);

    const Graph& base() const { return base_; }
    const VertexSet& d_side() const { return d_side_; }
    const VertexSet& x_side() const { return x_side_; }
    const std::vector<Edge>& cross_edges() const { return cross_; }
    /// The cross edges as a graph on the base vertex set.
    Graph cross_graph() const { return Graph(base_.vertex_count(), cross_); }

private:
    Graph base_;
    VertexSet d_side_;
    VertexSet x_side_;
    std::vector<Edge> cross_;
};

}  // namespace koptlab
