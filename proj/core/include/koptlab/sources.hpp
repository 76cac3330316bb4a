#pragma once

// Where campaign instances come from: graph6 / edge-list files, labeled
// exhaustive enumeration, seeded random families, and connected graphs up to
// isomorphism by edge count.

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koptlab/graph.hpp"

namespace koptlab {

struct GraphSource {
    enum class Kind { graph6_file, edge_list_file, exhaustive, random, random_chordal, random_triangle_free, connected_by_edges, single };

    Kind kind = Kind::single;
    std::string path;       // files
    int n = 0;              // exhaustive: every labeled graph on 1..n vertices; connected_by_edges: max edges
    double p = 0.5;
    std::uint64_t seed = 0;
    int count = 0;
    std::optional<Graph> graph;  // single

    static GraphSource graph6_file(std::string path);
    static GraphSource edge_list_file(std::string path);
    /// Throws ContractViolation for n > 8.
    static GraphSource exhaustive(int n);
    static GraphSource random(int n, double p, std::uint64_t seed, int count);
    static GraphSource random_chordal(int n, std::uint64_t seed, int count);
    static GraphSource random_triangle_free(int n, double p, std::uint64_t seed, int count);
    static GraphSource connected_by_edges(int max_edges);
    static GraphSource single(Graph g);
};

/// Pull-based iteration over a source. File errors are raised as ParseError /
/// std::runtime_error from next().
class GraphStream {
public:
    explicit GraphStream(const GraphSource& source);
    ~GraphStream();
    GraphStream(GraphStream&&) noexcept;
    GraphStream& operator=(GraphStream&&) noexcept;

    std::optional<Graph> next();

private:
    struct State;
    std::unique_ptr<State> state_;
};

/// Reverse simplicial construction: each new vertex joins a random clique inside
/// the closed neighborhood of a random earlier vertex, then labels are shuffled.
Graph random_chordal(int n, std::uint64_t seed);

/// Random edge order, keeping each edge with probability p unless it closes a triangle.
Graph random_triangle_free(int n, double p, std::uint64_t seed);

/// Isomorphism invariant from iterated degree refinement; equal for isomorphic graphs.
std::string refinement_signature(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

/// Connected graphs with exactly m edges (m >= 1), one per isomorphism class,
/// grown from the (m-1)-edge list by adding an edge or a pendant vertex.
std::vector<Graph> connected_graphs_with_edges(int m);

}  // namespace koptlab
