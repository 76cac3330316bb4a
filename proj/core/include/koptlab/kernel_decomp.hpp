#pragma once

// Sequential decompositions of orientations, the "good" ones (layers made of
// directed paths and even cycles, per-vertex outdegree non-increasing across
// layers, no directed odd cycle in the base), kernels, and the kernel-method
// construction that turns a good decomposition into saturating colorings.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "koptlab/caps.hpp"
#include "koptlab/graph.hpp"
#include "koptlab/saturation.hpp"

namespace koptlab {

/// Layers of arc indices (the base graph's edge indices), in order.
struct SequentialDecomposition {
    std::vector<std::vector<std::size_t>> layers;

    friend bool operator==(const SequentialDecomposition&, const SequentialDecomposition&) = default;
};

struct GoodDecompositionCertificate {
    Orientation base;
    SequentialDecomposition decomposition;
};

struct InvalidReason {
    enum class Kind { malformed, odd_cycle, bad_component, not_monotone };

    Kind kind = Kind::malformed;
    std::string message;
    std::vector<Vertex> witness;  // the odd cycle, the offending component, or {v, layer}
};

using ValidationOutcome = std::variant<GoodDecompositionCertificate, InvalidReason>;

/// Checks, in this order: the layers partition the arcs with no empty trailing
/// layer; the base has no directed odd cycle; every component of every layer is a
/// directed path or directed even cycle; outdegrees never increase from one layer
/// to the next.
ValidationOutcome validate_good(const Orientation& base, const SequentialDecomposition& layers);

/// A directed odd cycle (vertex sequence, closing arc implied), or nullopt.
std::optional<std::vector<Vertex>> find_directed_odd_cycle(const Orientation& j);

struct DecompositionSearchResult {
    enum class Status { found, exhausted_full, exhausted_budget };

    Status status = Status::exhausted_full;
    std::optional<GoodDecompositionCertificate> certificate;
    std::uint64_t orientations_tried = 0;
    std::uint64_t nodes = 0;
};

struct DecompositionSearchOptions {
    std::uint64_t budget = 0;  // assignment nodes; 0 = unlimited (exhaustive mode only)
    int jobs = 1;
    std::uint64_t seed = 1;    // orientation sampling above the edge cap
};

/// Exhaustive mode (edges within caps.decomposition_edges): every orientation in
/// Gray-code order, skipping those with a directed odd cycle, then a backtracking
/// layer assignment. Above the cap, random orientations are sampled until the
/// budget runs out (a budget is then required). With jobs > 1 the orientation
/// range is split by prefix; the reported certificate is the first in Gray order.
DecompositionSearchResult search_good_decomposition(const Graph& g, const DecompositionSearchOptions& options = {},
                                                    const Caps& caps = default_caps());

/// Layer assignment for one fixed orientation, or nullopt if none exists.
std::optional<SequentialDecomposition> good_layers_for(const Orientation& j, std::uint64_t* nodes = nullptr);

/// Lexicographically least kernel of j restricted to `within`.
std::optional<VertexSet> kernel_bruteforce(const Orientation& j, const VertexSet& within, const Caps& caps = default_caps());

/// Orientation of the line graph of the bigraph u (X = u.x_side(), Y = u.d_side()).
/// Line-graph vertex i is u.cross_edges()[i]; phi is indexed the same way. For
/// meeting edges with phi(e1) < phi(e2): e1 -> e2 if they meet in X, e2 -> e1 if in Y.
Orientation galvin_orientation(const BipartiteSplit& u, const std::vector<int>& phi);

/// The kernel-method construction: bigraph U of the arcs, layer indices as its
/// edge coloring, padded lists lifted to the line graph, kernel-greedy list
/// coloring, then per color a matching covering every tail. Every intermediate
/// claim is asserted; failures are raised as Counterexample.
PartialEdgeColoring decomposition_to_saturating(const Graph& g, const GoodDecompositionCertificate& cert, const ListAssignment& l,
                                                const Caps& caps = default_caps());

/// Certificate JSON: {"n": int, "arcs": [[u,v],...], "layers": [[arc_index,...],...]}.
std::string certificate_to_json(const GoodDecompositionCertificate& cert);
/// Accepts the same shape; "n" defaults to one more than the largest endpoint.
GoodDecompositionCertificate certificate_from_json(const std::string& text);

}  // namespace koptlab
