#include "koptlab/favaron.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "koptlab/errors.hpp"
#include "payload.hpp"

namespace koptlab {

namespace {

std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
    std::vector<std::uint64_t> adj;
    adj.reserve(static_cast<std::size_t>(g.vertex_count()));
    for (Vertex v = 0; v < g.vertex_count(); ++v) adj.push_back(g.neighbors(v).mask());
    return adj;
}

void require_subset_cap(const Graph& g, const Caps& caps, const char* op) {
    if (static_cast<std::size_t>(g.vertex_count()) > caps.subset_vertices) {
        throw CapExceeded(std::string(op) + ": " + std::to_string(g.vertex_count()) + " vertices exceeds the cap of " +
                          std::to_string(caps.subset_vertices));
    }
}

int induced_degree(const Graph& g, const VertexSet& d, Vertex v) { return g.neighbors(v).count_common(d); }

/// Depth-first search over k-dependent sets with the bound phi <= current + k * remaining.
/// Calls `visit(mask, phi)` for every k-dependent set whose phi can reach `best`.
class DependentSetSearch {
public:
    DependentSetSearch(const Graph& g, int k) : adj_(adjacency_masks(g)), n_(g.vertex_count()), k_(k) {}

    template <class Visit>
    void run(Visit&& visit) {
        deg_.assign(static_cast<std::size_t>(n_), 0);
        best_ = 0;
        recurse(0, 0, 0, visit);
    }

    int best() const { return best_; }

private:
    template <class Visit>
    void recurse(int i, std::uint64_t mask, int phi, Visit& visit) {
        if (phi + k_ * (n_ - i) < best_) return;
        if (i == n_) {
            best_ = std::max(best_, phi);
            visit(mask, phi);
            return;
        }
        const auto v = static_cast<std::size_t>(i);
        const std::uint64_t nb = adj_[v] & mask;
        const int add = std::popcount(nb);
        bool ok = add <= k_ - 1;
        for (std::uint64_t w = nb; ok && w != 0; w &= w - 1)
            if (deg_[static_cast<std::size_t>(std::countr_zero(w))] + 1 > k_ - 1) ok = false;
        if (ok) {
            for (std::uint64_t w = nb; w != 0; w &= w - 1) ++deg_[static_cast<std::size_t>(std::countr_zero(w))];
            deg_[v] = add;
            recurse(i + 1, mask | (std::uint64_t{1} << i), phi + k_ - add, visit);
            for (std::uint64_t w = nb; w != 0; w &= w - 1) --deg_[static_cast<std::size_t>(std::countr_zero(w))];
            deg_[v] = 0;
        }
        recurse(i + 1, mask, phi, visit);
    }

    std::vector<std::uint64_t> adj_;
    std::vector<int> deg_;
    int n_;
    int k_;
    int best_ = 0;
};

bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
    while (a != 0 && b != 0) {
        const int la = std::countr_zero(a);
        const int lb = std::countr_zero(b);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

void check_outside_orientation(const Graph& g, const VertexSet& d, const Orientation& j) {
    const auto outside = induced_subgraph(g, d.complement());
    if (!(j.base() == outside.graph)) throw ContractViolation("orientation is not an orientation of G[V - D]");
}

std::string instance_payload(const Graph& g, int k, const VertexSet& d, const Orientation& j) {
    nlohmann::json p{{"graph6", detail::graph_json(g)}, {"k", k}, {"d", detail::set_json(d)}, {"orientation", detail::arcs_json(j)}};
    return p.dump();
}

}  // namespace

int phi_k(const Graph& g, int k, const VertexSet& d) {
    int inside = 0;
    for (Vertex v : d.members()) inside += induced_degree(g, d, v);
    return k * d.size() - inside / 2;
}

bool is_k_dependent(const Graph& g, int k, const VertexSet& d) {
    for (Vertex v : d.members())
        if (induced_degree(g, d, v) > k - 1) return false;
    return true;
}

bool is_k_dominating(const Graph& g, int k, const VertexSet& d) {
    for (Vertex v : d.complement().members())
        if (induced_degree(g, d, v) < k) return false;
    return true;
}

VertexSet prune_to_dependent(const Graph& g, int k, const VertexSet& t) {
    VertexSet d = t;
    while (true) {
        Vertex worst = -1;
        int worst_deg = k - 1;
        for (Vertex v : d.members()) {
            const int deg = induced_degree(g, d, v);
            if (deg > worst_deg) {
                worst = v;
                worst_deg = deg;
            }
        }
        if (worst < 0) return d;
        d.erase(worst);
    }
}

OptimalSetResult k_optimal_exhaustive(const Graph& g, int k, const Caps& caps) {
    require_subset_cap(g, caps, "k_optimal_exhaustive");
    if (k < 1) throw ContractViolation("k must be positive");
    DependentSetSearch search(g, k);
    std::uint64_t best_mask = 0;
    int best_phi = -1;
    search.run([&](std::uint64_t mask, int phi) {
        if (phi > best_phi || (phi == best_phi && mask_lex_less(mask, best_mask))) {
            best_phi = phi;
            best_mask = mask;
        }
    });
    return {VertexSet::from_mask(g.vertex_count(), best_mask), best_phi, OptimalSetResult::Certificate::exhaustive};
}

std::vector<VertexSet> all_k_optimal_sets(const Graph& g, int k, const Caps& caps) {
    require_subset_cap(g, caps, "all_k_optimal_sets");
    if (k < 1) throw ContractViolation("k must be positive");
    DependentSetSearch search(g, k);
    std::vector<std::pair<std::uint64_t, int>> found;
    search.run([&](std::uint64_t mask, int phi) { found.emplace_back(mask, phi); });
    std::vector<std::uint64_t> best;
    for (const auto& [mask, phi] : found)
        if (phi == search.best()) best.push_back(mask);
    std::sort(best.begin(), best.end(), mask_lex_less);
    std::vector<VertexSet> out;
    for (auto m : best) out.push_back(VertexSet::from_mask(g.vertex_count(), m));
    return out;
}

int phi_k_max(const Graph& g, int k, const Caps& caps) { return k_optimal_exhaustive(g, k, caps).phi; }

Orientation orientation_of_outside(const Graph& g, const VertexSet& d, const std::vector<Arc>& arcs_in_g) {
    const auto outside = induced_subgraph(g, d.complement());
    std::vector<int> to_child(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < outside.to_parent.size(); ++i) to_child[static_cast<std::size_t>(outside.to_parent[i])] = static_cast<int>(i);
    std::vector<Arc> local;
    for (const auto& a : arcs_in_g) {
        const int t = to_child[static_cast<std::size_t>(a.tail)];
        const int h = to_child[static_cast<std::size_t>(a.head)];
        if (t < 0 || h < 0) throw ContractViolation("arc leaves G[V - D]");
        local.push_back({t, h});
    }
    return Orientation::from_arcs(outside.graph, local);
}

DemandProfile theorem_demands(const Graph& g, int k, const VertexSet& d, const Orientation& j) {
    check_outside_orientation(g, d, j);
    std::vector<int> demands(static_cast<std::size_t>(g.vertex_count()), 0);
    const auto xs = d.complement().members();
    for (std::size_t i = 0; i < xs.size(); ++i)
        demands[static_cast<std::size_t>(xs[i])] = std::max(0, k - j.outdegree(static_cast<Vertex>(i)));
    return DemandProfile(k, std::move(demands));
}

ImproveOutcome improve_once(const Graph& g, int k, const VertexSet& d, const Orientation& j) {
    if (!is_k_dependent(g, k, d)) throw ContractViolation("improve_once: d is not k-dependent");
    const auto profile = theorem_demands(g, k, d, j);
    const BipartiteSplit split(g, d);
    auto outcome = check_generalized_lebensold(split, profile);
    if (outcome.feasible()) return NoViolation{outcome.subgraph()};

    // Zero-demand vertices never help a violation; dropping them keeps it violated.
    VertexSet s = outcome.violator().s;
    for (Vertex x : s.members())
        if (profile.demand(x) == 0) s.erase(x);
    VertexSet b(g.vertex_count());
    for (Vertex v : d.members())
        if (g.neighbors(v).count_common(s) <= k - 1) b.insert(v);
    const VertexSet a = d - b;

    // The inequality chain of the improvement argument, checked on the instance.
    const auto xs = d.complement().members();
    int outdeg_sum = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (s.contains(xs[i])) outdeg_sum += j.outdegree(static_cast<Vertex>(i));
    int cross_sb = 0;
    for (Vertex v : b.members()) cross_sb += g.neighbors(v).count_common(s);
    const int inside_s = k * s.size() - phi_k(g, k, s);
    const int lhs = k * a.size() + cross_sb;
    const VertexSet improved = b | s;
    const int phi_d = phi_k(g, k, d);
    const int phi_improved = phi_k(g, k, improved);
    const bool chain_ok = lhs == lebensold_capacity(split, k, s) && lhs < k * s.size() - outdeg_sum &&
                          outdeg_sum >= inside_s && phi_improved >= phi_d - k * a.size() + k * s.size() - cross_sb - inside_s &&
                          phi_improved > phi_d;
    if (!chain_ok) throw Counterexample("improve_once: improvement inequality chain failed", instance_payload(g, k, d, j));

    VertexSet pruned = prune_to_dependent(g, k, improved);
    if (phi_k(g, k, pruned) < phi_improved) throw Counterexample("prune_to_dependent decreased phi_k", instance_payload(g, k, d, j));
    return Improved{std::move(pruned)};
}

Orientation degeneracy_orientation(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
    std::vector<int> removed_at(static_cast<std::size_t>(n), -1);
    for (int step = 0; step < n; ++step) {
        Vertex pick = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (removed_at[static_cast<std::size_t>(v)] >= 0) continue;
            if (pick < 0 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(pick)]) pick = v;
        }
        removed_at[static_cast<std::size_t>(pick)] = step;
        for (Vertex w : g.neighbors(pick).members())
            if (removed_at[static_cast<std::size_t>(w)] < 0) --deg[static_cast<std::size_t>(w)];
    }
    std::vector<bool> forward(g.edge_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edge(i);
        forward[i] = removed_at[static_cast<std::size_t>(e.u)] < removed_at[static_cast<std::size_t>(e.v)];
    }
    return Orientation(g, std::move(forward));
}

OptimalSetResult k_optimal_local(const Graph& g, int k, std::size_t exhaustive_edges) {
    if (k < 1) throw ContractViolation("k must be positive");
    VertexSet d(g.vertex_count());
    const int ceiling = k * g.vertex_count();
    for (int iteration = 0; iteration <= ceiling; ++iteration) {
        const auto outside = induced_subgraph(g, d.complement()).graph;
        std::vector<Orientation> policy;
        if (outside.edge_count() <= exhaustive_edges) {
            Caps caps;
            caps.orientation_edges = exhaustive_edges;
            for (auto j : orient_all(outside, caps)) policy.push_back(std::move(j));
        } else {
            const auto base = degeneracy_orientation(outside);
            policy.push_back(base);
            for (Vertex x = 0; x < outside.vertex_count(); ++x) {
                auto arcs = base.arcs();
                for (auto& a : arcs)
                    if (a.tail == x) std::swap(a.tail, a.head);
                policy.push_back(Orientation::from_arcs(outside, arcs));
            }
        }
        bool improved = false;
        for (const auto& j : policy) {
            auto step = improve_once(g, k, d, j);
            if (auto* up = std::get_if<Improved>(&step)) {
                const int before = phi_k(g, k, d);
                d = std::move(up->d);
                if (phi_k(g, k, d) <= before) throw Counterexample("improve_once did not increase phi_k", "{}");
                improved = true;
                break;
            }
        }
        if (!improved) {
            if (!is_k_dominating(g, k, d)) {
                nlohmann::json p{{"graph6", detail::graph_json(g)}, {"k", k}, {"d", detail::set_json(d)}};
                throw Counterexample("local optimum is not k-dominating", p.dump());
            }
            return {d, phi_k(g, k, d), OptimalSetResult::Certificate::local_maximum};
        }
    }
    throw Counterexample("k_optimal_local exceeded k*n improvements", "{}");
}

KEdgeChromaticSubgraph verify_theorem_main(const Graph& g, int k, const VertexSet& d, const Orientation& j) {
    const auto profile = theorem_demands(g, k, d, j);
    auto outcome = check_generalized_lebensold(BipartiteSplit(g, d), profile);
    if (!outcome.feasible()) {
        nlohmann::json p = nlohmann::json::parse(instance_payload(g, k, d, j));
        p["violator"] = detail::set_json(outcome.violator().s);
        p["deficiency"] = outcome.violator().deficiency;
        throw Counterexample("no k-edge-chromatic subgraph meets the outdegree demands", p.dump());
    }
    auto m = outcome.subgraph();
    const auto xs = d.complement().members();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (m.degree(xs[i]) + j.outdegree(static_cast<Vertex>(i)) < k) {
            throw Counterexample("engine returned a subgraph violating a demand", instance_payload(g, k, d, j));
        }
    }
    for (const auto& ce : m.edges())
        if (d.contains(ce.edge.u) == d.contains(ce.edge.v)) throw Counterexample("non-cross edge in witness", instance_payload(g, k, d, j));
    return m;
}

std::vector<std::vector<Edge>> matchings_into_d(const Graph& g, int k, const VertexSet& d, const VertexSet& s) {
    if ((s & d).size() > 0) throw ContractViolation("matchings_into_d: s meets d");
    for (Vertex v : s.members())
        if (g.neighbors(v).count_common(s) > 0) throw ContractViolation("matchings_into_d: s is not independent");
    std::vector<Arc> arcs;
    const VertexSet outside = d.complement();
    for (const auto& e : g.edges()) {
        if (!outside.contains(e.u) || !outside.contains(e.v)) continue;
        arcs.push_back(s.contains(e.u) ? Arc{e.v, e.u} : Arc{e.u, e.v});
    }
    const auto j = orientation_of_outside(g, d, arcs);
    const auto m = verify_theorem_main(g, k, d, j);
    std::vector<std::vector<Edge>> out(static_cast<std::size_t>(k));
    for (const auto& ce : m.edges()) {
        if (s.contains(ce.edge.u) || s.contains(ce.edge.v)) out[static_cast<std::size_t>(ce.color - 1)].push_back(ce.edge);
    }
    for (const auto& matching : out) {
        if (static_cast<int>(matching.size()) != s.size()) {
            nlohmann::json p{{"graph6", detail::graph_json(g)}, {"k", k}, {"d", detail::set_json(d)}, {"s", detail::set_json(s)}};
            throw Counterexample("a color class does not saturate s", p.dump());
        }
    }
    return out;
}

std::vector<Edge> saturating_matching_complement(const Graph& g, const VertexSet& d) {
    const VertexSet outside = d.complement();
    VertexSet matched(g.vertex_count());
    std::vector<Edge> result;
    for (const auto& e : g.edges()) {
        if (!outside.contains(e.u) || !outside.contains(e.v)) continue;
        if (matched.contains(e.u) || matched.contains(e.v)) continue;
        matched.insert(e.u);
        matched.insert(e.v);
        result.push_back(e);
    }
    std::vector<int> demands(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex v : (outside - matched).members()) demands[static_cast<std::size_t>(v)] = 1;
    auto outcome = check_generalized_lebensold(BipartiteSplit(g, d), DemandProfile(1, demands));
    if (!outcome.feasible()) {
        nlohmann::json p{{"graph6", detail::graph_json(g)}, {"d", detail::set_json(d)}, {"violator", detail::set_json(outcome.violator().s)}};
        throw Counterexample("leftover independent set does not match into d", p.dump());
    }
    for (const auto& ce : outcome.subgraph().edges()) result.push_back(ce.edge);
    std::sort(result.begin(), result.end());
    return result;
}

int gamma_k(const Graph& g, int k, const Caps& caps) {
    require_subset_cap(g, caps, "gamma_k");
    const auto adj = adjacency_masks(g);
    const int n = g.vertex_count();
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    int best = n;
    for (std::uint64_t mask = 0; mask <= all; ++mask) {
        const int size = std::popcount(mask);
        if (size >= best) continue;
        bool ok = true;
        for (std::uint64_t rest = all & ~mask; ok && rest != 0; rest &= rest - 1)
            if (std::popcount(adj[static_cast<std::size_t>(std::countr_zero(rest))] & mask) < k) ok = false;
        if (ok) best = size;
    }
    return best;
}

int alpha_k(const Graph& g, int k, const Caps& caps) {
    require_subset_cap(g, caps, "alpha_k");
    const auto adj = adjacency_masks(g);
    const int n = g.vertex_count();
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    int best = 0;
    for (std::uint64_t mask = 0; mask <= all; ++mask) {
        const int size = std::popcount(mask);
        if (size <= best) continue;
        bool ok = true;
        for (std::uint64_t in = mask; ok && in != 0; in &= in - 1)
            if (std::popcount(adj[static_cast<std::size_t>(std::countr_zero(in))] & mask) > k - 1) ok = false;
        if (ok) best = size;
    }
    return best;
}

}  // namespace koptlab
