#include "koptlab/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "koptlab/errors.hpp"

namespace koptlab {

// ---------------------------------------------------------------- DemandProfile

DemandProfile::DemandProfile(int k, std::vector<int> demands) : k_(k), demands_(std::move(demands)) {
    if (k < 1) throw ContractViolation("demand profile needs k >= 1");
    for (auto& d : demands_) d = std::clamp(d, 0, k);
}

DemandProfile DemandProfile::uniform(int k, int vertex_count) {
    return DemandProfile(k, std::vector<int>(static_cast<std::size_t>(vertex_count), k));
}

// ---------------------------------------------------------------- KEdgeChromaticSubgraph

bool is_proper_coloring(int vertex_count, int k, const std::vector<ColoredEdge>& edges) {
    std::vector<std::vector<bool>> used(static_cast<std::size_t>(vertex_count), std::vector<bool>(static_cast<std::size_t>(k) + 1));
    for (const auto& ce : edges) {
        if (ce.color < 1 || ce.color > k) return false;
        for (Vertex w : {ce.edge.u, ce.edge.v}) {
            if (w < 0 || w >= vertex_count) return false;
            auto& row = used[static_cast<std::size_t>(w)];
            if (row[static_cast<std::size_t>(ce.color)]) return false;
            row[static_cast<std::size_t>(ce.color)] = true;
        }
    }
    return true;
}

KEdgeChromaticSubgraph::KEdgeChromaticSubgraph(Graph base, int k, std::vector<ColoredEdge> edges)
    : base_(std::move(base)), k_(k), edges_(std::move(edges)) {
    if (k < 0) throw ContractViolation("negative color count");
    for (auto& ce : edges_) {
        ce.edge = Edge::make(ce.edge.u, ce.edge.v);
        if (!base_.adjacent(ce.edge.u, ce.edge.v)) {
            throw ContractViolation("colored edge " + std::to_string(ce.edge.u) + "-" + std::to_string(ce.edge.v) +
                                    " is not in the base graph");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i].edge == edges_[i - 1].edge) throw ContractViolation("edge colored twice");
    if (!is_proper_coloring(base_.vertex_count(), k_, edges_)) throw ContractViolation("coloring is not proper");
}

int KEdgeChromaticSubgraph::degree(Vertex v) const {
    return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [v](const ColoredEdge& ce) { return ce.edge.touches(v); }));
}

bool KEdgeChromaticSubgraph::covers(Vertex v, int color) const {
    return std::any_of(edges_.begin(), edges_.end(),
                       [&](const ColoredEdge& ce) { return ce.color == color && ce.edge.touches(v); });
}

std::vector<Edge> KEdgeChromaticSubgraph::color_class(int c) const {
    std::vector<Edge> out;
    for (const auto& ce : edges_)
        if (ce.color == c) out.push_back(ce.edge);
    return out;
}

// ---------------------------------------------------------------- max flow

namespace {

/// Shortest-augmenting-path max flow. Arcs are scanned in insertion order, so
/// the resulting flow is a deterministic function of the construction order.
class FlowNetwork {
public:
    explicit FlowNetwork(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

    std::size_t add_arc(int from, int to, int cap) {
        const auto id = arcs_.size();
        arcs_.push_back({to, cap});
        adj_[static_cast<std::size_t>(from)].push_back(id);
        arcs_.push_back({from, 0});
        adj_[static_cast<std::size_t>(to)].push_back(id + 1);
        return id;
    }

    int max_flow(int source, int sink) {
        int total = 0;
        const auto n = adj_.size();
        std::vector<std::size_t> via(n);
        while (true) {
            std::vector<bool> seen(n, false);
            seen[static_cast<std::size_t>(source)] = true;
            std::queue<int> q;
            q.push(source);
            while (!q.empty() && !seen[static_cast<std::size_t>(sink)]) {
                const int v = q.front();
                q.pop();
                for (auto id : adj_[static_cast<std::size_t>(v)]) {
                    const auto& a = arcs_[id];
                    if (a.cap > 0 && !seen[static_cast<std::size_t>(a.to)]) {
                        seen[static_cast<std::size_t>(a.to)] = true;
                        via[static_cast<std::size_t>(a.to)] = id;
                        q.push(a.to);
                    }
                }
            }
            if (!seen[static_cast<std::size_t>(sink)]) return total;
            int push = std::numeric_limits<int>::max();
            for (int v = sink; v != source; v = arcs_[via[static_cast<std::size_t>(v)] ^ 1U].to)
                push = std::min(push, arcs_[via[static_cast<std::size_t>(v)]].cap);
            for (int v = sink; v != source; v = arcs_[via[static_cast<std::size_t>(v)] ^ 1U].to) {
                arcs_[via[static_cast<std::size_t>(v)]].cap -= push;
                arcs_[via[static_cast<std::size_t>(v)] ^ 1U].cap += push;
            }
            total += push;
        }
    }

    /// Nodes reachable from `source` in the residual network.
    std::vector<bool> residual_reachable(int source) const {
        std::vector<bool> seen(adj_.size(), false);
        seen[static_cast<std::size_t>(source)] = true;
        std::vector<int> stack{source};
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (auto id : adj_[static_cast<std::size_t>(v)]) {
                const auto& a = arcs_[id];
                if (a.cap > 0 && !seen[static_cast<std::size_t>(a.to)]) {
                    seen[static_cast<std::size_t>(a.to)] = true;
                    stack.push_back(a.to);
                }
            }
        }
        return seen;
    }

    int residual(std::size_t id) const { return arcs_[id].cap; }

private:
    struct FlowArc {
        int to;
        int cap;
    };
    std::vector<FlowArc> arcs_;
    std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace

int lebensold_capacity(const BipartiteSplit& split, int k, const VertexSet& s) {
    const auto& g = split.base();
    int total = 0;
    for (Vertex v : split.d_side().members()) total += std::min(k, g.neighbors(v).count_common(s & split.x_side()));
    return total;
}

LebensoldOutcome check_generalized_lebensold(const BipartiteSplit& split, const DemandProfile& profile) {
    const auto& g = split.base();
    const int n = g.vertex_count();
    if (static_cast<int>(profile.demands().size()) != n) {
        throw ContractViolation("demand profile must cover every vertex of the split");
    }
    const int k = profile.k();
    constexpr int source = 0;
    constexpr int sink = 1;
    auto node = [](Vertex v) { return v + 2; };

    FlowNetwork net(n + 2);
    int total_demand = 0;
    const auto xs = split.x_side().members();
    const auto ds = split.d_side().members();
    for (Vertex x : xs) {
        net.add_arc(source, node(x), profile.demand(x));
        total_demand += profile.demand(x);
    }
    std::vector<std::pair<Edge, std::size_t>> cross_arcs;
    for (Vertex x : xs) {
        for (Vertex w : (g.neighbors(x) & split.d_side()).members())
            cross_arcs.emplace_back(Edge::make(x, w), net.add_arc(node(x), node(w), 1));
    }
    for (Vertex d : ds) net.add_arc(node(d), sink, k);

    LebensoldOutcome out{Feasible{}, net.max_flow(source, sink), total_demand};
    if (out.flow_value == total_demand) {
        std::vector<Edge> used;
        for (const auto& [e, id] : cross_arcs)
            if (net.residual(id) == 0) used.push_back(e);
        const auto colored = konig_color(Graph(n, used), k);
        out.verdict = Feasible{KEdgeChromaticSubgraph(g, k, colored.edges())};
        return out;
    }

    const auto reach = net.residual_reachable(source);
    VertexSet s(n);
    for (Vertex x : xs)
        if (reach[static_cast<std::size_t>(node(x))]) s.insert(x);
    int demand_in_s = 0;
    for (Vertex x : s.members()) demand_in_s += profile.demand(x);
    const int deficiency = demand_in_s - lebensold_capacity(split, k, s);
    if (deficiency != total_demand - out.flow_value) {
        throw Counterexample("min-cut violator deficiency disagrees with the flow gap", "{}");
    }
    out.verdict = Infeasible{HallViolator{std::move(s), deficiency}};
    return out;
}

LebensoldOutcome lebensold_classic(const BipartiteSplit& split, int k) {
    return check_generalized_lebensold(split, DemandProfile::uniform(k, split.base().vertex_count()));
}

// ---------------------------------------------------------------- König

KEdgeChromaticSubgraph konig_color(const Graph& bipartite, int k) {
    if (!bipartition(bipartite)) throw ContractViolation("konig_color: graph is not bipartite");
    if (bipartite.max_degree() > k) throw ContractViolation("konig_color: maximum degree exceeds k");
    const auto n = static_cast<std::size_t>(bipartite.vertex_count());
    const auto width = static_cast<std::size_t>(k) + 1;
    // at[v * width + c] = neighbor joined to v by color c, or -1
    std::vector<Vertex> at(n * width, -1);
    auto slot = [&](Vertex v, int c) -> Vertex& { return at[static_cast<std::size_t>(v) * width + static_cast<std::size_t>(c)]; };
    auto free_color = [&](Vertex v) {
        for (int c = 1; c <= k; ++c)
            if (slot(v, c) == -1) return c;
        throw ContractViolation("konig_color: no free color");
    };

    for (const auto& e : bipartite.edges()) {
        const int a = free_color(e.u);
        if (slot(e.v, a) != -1) {
            const int b = free_color(e.v);
            // swap a/b along the alternating path leaving e.v on color a
            std::vector<std::pair<Edge, int>> path;
            Vertex cur = e.v;
            int c = a;
            while (slot(cur, c) != -1) {
                const Vertex next = slot(cur, c);
                path.emplace_back(Edge{cur, next}, c);
                cur = next;
                c = (c == a) ? b : a;
            }
            for (const auto& [pe, pc] : path) {
                slot(pe.u, pc) = -1;
                slot(pe.v, pc) = -1;
            }
            for (const auto& [pe, pc] : path) {
                const int swapped = (pc == a) ? b : a;
                slot(pe.u, swapped) = pe.v;
                slot(pe.v, swapped) = pe.u;
            }
        }
        slot(e.u, a) = e.v;
        slot(e.v, a) = e.u;
    }

    std::vector<ColoredEdge> out;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
        for (int c = 1; c <= k; ++c)
            if (slot(v, c) > v) out.push_back({Edge{v, slot(v, c)}, c});
    return KEdgeChromaticSubgraph(bipartite, k, std::move(out));
}

// ---------------------------------------------------------------- auxiliary extension

BipartiteSplit auxiliary_extension(const BipartiteSplit& split, const DemandProfile& profile) {
    const int n = split.base().vertex_count();
    const int k = profile.k();
    std::vector<Edge> es = split.cross_edges();
    int next = n;
    for (Vertex x : split.x_side().members())
        for (int i = 0; i < k - profile.demand(x); ++i) es.push_back(Edge::make(x, next++));
    VertexSet d(next);
    for (Vertex v : split.d_side().members()) d.insert(v);
    for (Vertex v = n; v < next; ++v) d.insert(v);
    return BipartiteSplit(Graph(next, std::move(es)), std::move(d));
}

// ---------------------------------------------------------------- blossom

std::vector<Edge> maximum_matching(const Graph& g) {
    const int n = g.vertex_count();
    const auto un = static_cast<std::size_t>(n);
    std::vector<int> match(un, -1);
    std::vector<int> parent(un);
    std::vector<int> base(un);
    std::vector<bool> used(un);
    std::vector<bool> blossom(un);

    auto lca = [&](int a, int b) {
        std::vector<bool> seen(un, false);
        while (true) {
            a = base[static_cast<std::size_t>(a)];
            seen[static_cast<std::size_t>(a)] = true;
            if (match[static_cast<std::size_t>(a)] == -1) break;
            a = parent[static_cast<std::size_t>(match[static_cast<std::size_t>(a)])];
        }
        while (true) {
            b = base[static_cast<std::size_t>(b)];
            if (seen[static_cast<std::size_t>(b)]) return b;
            b = parent[static_cast<std::size_t>(match[static_cast<std::size_t>(b)])];
        }
    };
    auto mark_path = [&](int v, int b, int child) {
        while (base[static_cast<std::size_t>(v)] != b) {
            const int mv = match[static_cast<std::size_t>(v)];
            blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(v)])] = true;
            blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(mv)])] = true;
            parent[static_cast<std::size_t>(v)] = child;
            child = mv;
            v = parent[static_cast<std::size_t>(mv)];
        }
    };
    auto find_path = [&](int root) {
        std::fill(used.begin(), used.end(), false);
        std::fill(parent.begin(), parent.end(), -1);
        for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i)] = i;
        used[static_cast<std::size_t>(root)] = true;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int to : g.neighbors(v).members()) {
                if (base[static_cast<std::size_t>(v)] == base[static_cast<std::size_t>(to)] ||
                    match[static_cast<std::size_t>(v)] == to)
                    continue;
                if (to == root || (match[static_cast<std::size_t>(to)] != -1 &&
                                   parent[static_cast<std::size_t>(match[static_cast<std::size_t>(to)])] != -1)) {
                    const int cur = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), false);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n; ++i) {
                        if (blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(i)])]) {
                            base[static_cast<std::size_t>(i)] = cur;
                            if (!used[static_cast<std::size_t>(i)]) {
                                used[static_cast<std::size_t>(i)] = true;
                                q.push(i);
                            }
                        }
                    }
                } else if (parent[static_cast<std::size_t>(to)] == -1) {
                    parent[static_cast<std::size_t>(to)] = v;
                    if (match[static_cast<std::size_t>(to)] == -1) return to;
                    const int next = match[static_cast<std::size_t>(to)];
                    used[static_cast<std::size_t>(next)] = true;
                    q.push(next);
                }
            }
        }
        return -1;
    };

    for (int v = 0; v < n; ++v) {
        if (match[static_cast<std::size_t>(v)] != -1) continue;
        int u = find_path(v);
        while (u != -1) {
            const int pv = parent[static_cast<std::size_t>(u)];
            const int ppv = match[static_cast<std::size_t>(pv)];
            match[static_cast<std::size_t>(u)] = pv;
            match[static_cast<std::size_t>(pv)] = u;
            u = ppv;
        }
    }

    std::vector<Edge> out;
    for (int v = 0; v < n; ++v)
        if (match[static_cast<std::size_t>(v)] > v) out.push_back({v, match[static_cast<std::size_t>(v)]});
    return out;
}

}  // namespace koptlab
