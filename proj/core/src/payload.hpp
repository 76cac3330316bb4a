#pragma once

// JSON payloads attached to Counterexample exceptions.

#include <json.hpp>
#include <string>
#include <vector>

#include "koptlab/graph.hpp"

namespace koptlab::detail {

inline nlohmann::json set_json(const VertexSet& s) { return s.members(); }

inline nlohmann::json arcs_json(const Orientation& j) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& a : j.arcs()) out.push_back({a.tail, a.head});
    return out;
}

inline nlohmann::json graph_json(const Graph& g) {
    if (g.vertex_count() <= 62) return to_graph6(g);
    nlohmann::json es = nlohmann::json::array();
    for (const auto& e : g.edges()) es.push_back({e.u, e.v});
    return {{"n", g.vertex_count()}, {"edges", es}};
}

}  // namespace koptlab::detail
