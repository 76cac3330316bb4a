#include "koptlab/saturation.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

#include "koptlab/errors.hpp"
#include "koptlab/favaron.hpp"
#include "payload.hpp"

namespace koptlab {

namespace {

nlohmann::json lists_json(const ListAssignment& l) { return l.lists(); }

nlohmann::json coloring_json(const std::vector<ColoredEdge>& es) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& ce : es) out.push_back({ce.edge.u, ce.edge.v, ce.color});
    return out;
}

}  // namespace

ListAssignment::ListAssignment(int vertex_count) : lists_(static_cast<std::size_t>(vertex_count)) {}

ListAssignment::ListAssignment(std::vector<std::vector<int>> lists) : lists_(std::move(lists)) {
    for (auto& l : lists_) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        if (!l.empty() && l.front() < 1) throw ContractViolation("list colors must be positive");
    }
}

int ListAssignment::max_color() const {
    int m = 0;
    for (const auto& l : lists_)
        if (!l.empty()) m = std::max(m, l.back());
    return m;
}

std::vector<int> ListAssignment::palette() const {
    std::set<int> all;
    for (const auto& l : lists_) all.insert(l.begin(), l.end());
    return {all.begin(), all.end()};
}

std::string ListAssignment::serialize() const {
    std::string out;
    for (std::size_t v = 0; v < lists_.size(); ++v) {
        out += std::to_string(v) + ":";
        for (int c : lists_[v]) out += " " + std::to_string(c);
        out += "\n";
    }
    return out;
}

ListAssignment ListAssignment::parse(std::string_view text, int vertex_count) {
    std::vector<std::vector<int>> lists(static_cast<std::size_t>(vertex_count));
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(pos, end - pos);
        const auto colon = line.find(':');
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
            if (colon == std::string_view::npos) throw ParseError("list line without ':'", pos);
            int v = -1;
            const auto head = line.substr(0, colon);
            const auto first = head.find_first_not_of(" \t");
            if (first == std::string_view::npos) throw ParseError("missing vertex before ':'", pos);
            auto [p, ec] = std::from_chars(head.data() + first, head.data() + head.size(), v);
            if (ec != std::errc() || v < 0 || v >= vertex_count) throw ParseError("bad vertex in list line", pos);
            std::istringstream colors(std::string(line.substr(colon + 1)));
            std::string tok;
            while (colors >> tok) {
                int c = 0;
                auto [q, ec2] = std::from_chars(tok.data(), tok.data() + tok.size(), c);
                if (ec2 != std::errc() || q != tok.data() + tok.size() || c < 1) throw ParseError("bad color '" + tok + "'", pos);
                lists[static_cast<std::size_t>(v)].push_back(c);
            }
        }
        pos = end + 1;
    }
    return ListAssignment(std::move(lists));
}

PartialEdgeColoring::PartialEdgeColoring(Graph base) : base_(std::move(base)), colors_(base_.edge_count(), 0) {}

bool PartialEdgeColoring::has_color_at(Vertex v, int c) const {
    for (auto i : base_.incident_edges(v))
        if (colors_[i] == c) return true;
    return false;
}

void PartialEdgeColoring::assign(Vertex a, Vertex b, int c) {
    if (c < 1) throw ContractViolation("colors must be positive");
    const auto i = base_.edge_index_or_throw(a, b);
    const int old = colors_[i];
    colors_[i] = 0;
    if (has_color_at(a, c) || has_color_at(b, c)) {
        colors_[i] = old;
        throw ContractViolation("assign would make the edge coloring improper");
    }
    colors_[i] = c;
}

void PartialEdgeColoring::clear(Vertex a, Vertex b) { colors_[base_.edge_index_or_throw(a, b)] = 0; }

bool PartialEdgeColoring::is_proper() const {
    for (Vertex v = 0; v < base_.vertex_count(); ++v) {
        std::vector<int> seen;
        for (auto i : base_.incident_edges(v))
            if (colors_[i] != 0) seen.push_back(colors_[i]);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }
    return true;
}

std::vector<ColoredEdge> PartialEdgeColoring::colored_edges() const {
    std::vector<ColoredEdge> out;
    for (std::size_t i = 0; i < colors_.size(); ++i)
        if (colors_[i] != 0) out.push_back({base_.edge(i), colors_[i]});
    return out;
}

EliminationOrder EliminationOrder::from(std::vector<Vertex> order) {
    EliminationOrder out;
    out.position.assign(order.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Vertex v = order[i];
        if (v < 0 || static_cast<std::size_t>(v) >= order.size() || out.position[static_cast<std::size_t>(v)] != -1)
            throw ContractViolation("elimination order is not a permutation");
        out.position[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    out.order = std::move(order);
    return out;
}

bool EliminationOrder::is_simplicial(const Graph& g) const {
    if (static_cast<int>(order.size()) != g.vertex_count()) return false;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        std::vector<Vertex> later;
        for (Vertex w : g.neighbors(v).members())
            if (position[static_cast<std::size_t>(w)] > position[static_cast<std::size_t>(v)]) later.push_back(w);
        for (std::size_t a = 0; a < later.size(); ++a)
            for (std::size_t b = a + 1; b < later.size(); ++b)
                if (!g.adjacent(later[a], later[b])) return false;
    }
    return true;
}

bool is_saturating(const Graph& g, const ListAssignment& l, const PartialEdgeColoring& psi) {
    if (!(psi.base() == g)) throw ContractViolation("is_saturating: coloring is on a different graph");
    if (l.vertex_count() != g.vertex_count()) throw ContractViolation("is_saturating: list assignment has the wrong size");
    if (!psi.is_proper()) throw ContractViolation("is_saturating: coloring is not proper");
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (int c : l.of(v))
            if (!psi.has_color_at(v, c)) return false;
    return true;
}

std::optional<PartialEdgeColoring> saturable_bruteforce(const Graph& g, const ListAssignment& l, const Caps& caps) {
    if (l.vertex_count() != g.vertex_count()) throw ContractViolation("saturable_bruteforce: list assignment has the wrong size");
    if (g.edge_count() > caps.saturable_edges)
        throw CapExceeded("saturable_bruteforce: " + std::to_string(g.edge_count()) + " edges exceeds the cap of " +
                          std::to_string(caps.saturable_edges));
    if (l.palette().size() > caps.saturable_palette)
        throw CapExceeded("saturable_bruteforce: " + std::to_string(l.palette().size()) + " colors exceeds the cap of " +
                          std::to_string(caps.saturable_palette));

    PartialEdgeColoring psi(g);
    // Some saturating coloring restricts to the current partial one, so the edge that
    // supplies the first missing (v, c) is among the branches tried.
    std::function<bool()> go = [&]() {
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            for (int c : l.of(v)) {
                if (psi.has_color_at(v, c)) continue;
                for (auto i : g.incident_edges(v)) {
                    if (psi.color(i) != 0) continue;
                    const Vertex w = g.edge(i).other(v);
                    if (psi.has_color_at(w, c)) continue;
                    psi.assign(v, w, c);
                    if (go()) return true;
                    psi.clear(v, w);
                }
                return false;
            }
        return true;
    };
    if (!go()) return std::nullopt;
    return psi;
}

std::optional<EliminationOrder> chordal_order(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> weight(static_cast<std::size_t>(n), 0);
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    std::vector<Vertex> visit;
    for (int step = 0; step < n; ++step) {
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!visited[static_cast<std::size_t>(v)] && (best == -1 || weight[static_cast<std::size_t>(v)] > weight[static_cast<std::size_t>(best)]))
                best = v;
        visited[static_cast<std::size_t>(best)] = true;
        visit.push_back(best);
        for (Vertex w : g.neighbors(best).members())
            if (!visited[static_cast<std::size_t>(w)]) ++weight[static_cast<std::size_t>(w)];
    }
    std::reverse(visit.begin(), visit.end());
    auto ord = EliminationOrder::from(std::move(visit));
    if (!ord.is_simplicial(g)) return std::nullopt;
    return ord;
}

Orientation order_orientation(const Graph& g, const EliminationOrder& ord) {
    if (static_cast<int>(ord.order.size()) != g.vertex_count()) throw ContractViolation("order_orientation: order has the wrong size");
    std::vector<Arc> arcs;
    for (const auto& e : g.edges()) {
        const bool u_first = ord.position[static_cast<std::size_t>(e.u)] < ord.position[static_cast<std::size_t>(e.v)];
        arcs.push_back(u_first ? Arc{e.v, e.u} : Arc{e.u, e.v});
    }
    return Orientation::from_arcs(g, arcs);
}

PartialEdgeColoring saturate_chordal(const Graph& g, const EliminationOrder& ord, const ListAssignment& l) {
    const int n = g.vertex_count();
    if (l.vertex_count() != n) throw ContractViolation("saturate_chordal: list assignment has the wrong size");
    if (!ord.is_simplicial(g)) throw ContractViolation("saturate_chordal: order is not a simplicial elimination order");
    const auto j = order_orientation(g, ord);

    const int real_max = l.max_color();
    std::vector<std::vector<int>> lists = l.lists();
    for (Vertex v = 0; v < n; ++v) {
        auto& lv = lists[static_cast<std::size_t>(v)];
        const int out = j.outdegree(v);
        if (static_cast<int>(lv.size()) > out)
            throw ContractViolation("saturate_chordal: list of vertex " + std::to_string(v) + " is longer than its outdegree");
        for (int dummy = real_max + 1; static_cast<int>(lv.size()) < out; ++dummy) lv.push_back(dummy);
    }

    struct Step {
        Vertex v;
        std::vector<std::pair<Vertex, int>> reps;  // (w_i, c_i)
    };
    std::vector<Step> steps;
    std::vector<int> remaining_out = j.outdegrees();
    for (Vertex v : ord.order) {
        std::vector<Vertex> later;
        for (Vertex w : g.neighbors(v).members())
            if (ord.position[static_cast<std::size_t>(w)] > ord.position[static_cast<std::size_t>(v)]) later.push_back(w);
        std::sort(later.begin(), later.end(), [&](Vertex a, Vertex b) {
            return ord.position[static_cast<std::size_t>(a)] < ord.position[static_cast<std::size_t>(b)];
        });
        Step step{v, {}};
        std::vector<int> used;
        for (std::size_t i = 0; i < later.size(); ++i) {
            const Vertex w = later[i];
            // w has v and w_1..w_{i-1} as earlier neighbors still present.
            if (remaining_out[static_cast<std::size_t>(w)] < static_cast<int>(i) + 1)
                throw Counterexample("saturate_chordal: later neighbor has too few earlier neighbors",
                                     nlohmann::json{{"graph", detail::graph_json(g)}, {"order", ord.order}}.dump());
            auto& lw = lists[static_cast<std::size_t>(w)];
            const auto it = std::find_if(lw.begin(), lw.end(), [&](int c) { return std::find(used.begin(), used.end(), c) == used.end(); });
            if (it == lw.end())
                throw Counterexample("saturate_chordal: no distinct representative",
                                     nlohmann::json{{"graph", detail::graph_json(g)}, {"order", ord.order}, {"lists", lists_json(l)}}.dump());
            used.push_back(*it);
            step.reps.emplace_back(w, *it);
            lw.erase(it);
            --remaining_out[static_cast<std::size_t>(w)];
        }
        steps.push_back(std::move(step));
    }

    PartialEdgeColoring psi(g);
    for (auto s = steps.rbegin(); s != steps.rend(); ++s)
        for (const auto& [w, c] : s->reps)
            if (!psi.has_color_at(w, c)) psi.assign(s->v, w, c);
    for (const auto& ce : psi.colored_edges())
        if (ce.color > real_max) psi.clear(ce.edge.u, ce.edge.v);

    if (!is_saturating(g, l, psi))
        throw Counterexample("saturate_chordal: result is not saturating",
                             nlohmann::json{{"graph", detail::graph_json(g)}, {"order", ord.order}, {"lists", lists_json(l)}}.dump());
    return psi;
}

PartialEdgeColoring chordal_witness(const Graph& gx, const ListAssignment& l, const Orientation& j) {
    const auto ord = chordal_order(gx);
    if (!ord) throw ContractViolation("chordal_witness: graph is not chordal");
    if (!(order_orientation(gx, *ord) == j)) throw ContractViolation("chordal_witness: orientation does not come from the elimination order");
    return saturate_chordal(gx, *ord, l);
}

KEdgeChromaticSubgraph satur_pipeline(const Graph& g, int k, const VertexSet& d, const Orientation& j, const SaturationWitness& sat_witness) {
    const auto mprime = verify_theorem_main(g, k, d, j);
    const auto outside = induced_subgraph(g, d.complement());
    const Graph& gx = outside.graph;
    const int nx = gx.vertex_count();

    auto fail = [&](const std::string& what) {
        nlohmann::json p = {{"graph", detail::graph_json(g)}, {"k", k}, {"d", detail::set_json(d)}, {"orientation", detail::arcs_json(j)}};
        throw Counterexample("satur_pipeline: " + what, p.dump());
    };

    std::vector<std::vector<int>> lists(static_cast<std::size_t>(nx));
    for (Vertex i = 0; i < nx; ++i) {
        const Vertex v = outside.to_parent[static_cast<std::size_t>(i)];
        for (int c = 1; c <= k; ++c)
            if (!mprime.covers(v, c)) lists[static_cast<std::size_t>(i)].push_back(c);
        if (static_cast<int>(lists[static_cast<std::size_t>(i)].size()) != std::min(j.outdegree(i), k)) fail("missing colors do not match the outdegree");
    }
    const ListAssignment l(std::move(lists));
    const auto psi = sat_witness(gx, l, j);
    if (!is_saturating(gx, l, psi)) fail("witness coloring is not saturating");

    std::vector<std::vector<Edge>> star(static_cast<std::size_t>(k) + 1);
    for (const auto& ce : psi.colored_edges()) {
        if (ce.color > k) fail("witness uses a color outside 1..k");
        star[static_cast<std::size_t>(ce.color)].push_back(Edge::make(outside.to_parent[static_cast<std::size_t>(ce.edge.u)],
                                                                      outside.to_parent[static_cast<std::size_t>(ce.edge.v)]));
    }
    std::vector<ColoredEdge> merged;
    for (int c = 1; c <= k; ++c) {
        const auto& ms = star[static_cast<std::size_t>(c)];
        for (const auto& e : ms) merged.push_back({e, c});
        for (const auto& e : mprime.color_class(c))
            if (std::none_of(ms.begin(), ms.end(), [&](const Edge& f) { return f.meets(e); })) merged.push_back({e, c});
    }
    std::sort(merged.begin(), merged.end());
    if (!is_proper_coloring(g.vertex_count(), k, merged)) fail("merged coloring is improper");
    KEdgeChromaticSubgraph out(g, k, std::move(merged));
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!d.contains(v) && out.degree(v) != k) {
            nlohmann::json p = {{"graph", detail::graph_json(g)}, {"k", k}, {"d", detail::set_json(d)}, {"result", coloring_json(out.edges())}};
            throw Counterexample("satur_pipeline: vertex outside d does not reach degree k", p.dump());
        }
    return out;
}

KEdgeChromaticSubgraph satur_pipeline_chordal(const Graph& g, int k, const VertexSet& d) {
    const auto gx = induced_subgraph(g, d.complement()).graph;
    const auto ord = chordal_order(gx);
    if (!ord) throw ContractViolation("satur_pipeline_chordal: G[V - d] is not chordal");
    return satur_pipeline(g, k, d, order_orientation(gx, *ord), chordal_witness);
}

}  // namespace koptlab
