#include "koptlab/tuza.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "koptlab/errors.hpp"
#include "koptlab/favaron.hpp"
#include "payload.hpp"

namespace koptlab {

namespace {

using TriEdges = std::array<std::size_t, 3>;

std::vector<TriEdges> triangle_edges(const Graph& g, const std::vector<Triangle>& tris) {
    std::vector<TriEdges> out;
    out.reserve(tris.size());
    for (const auto& t : tris)
        out.push_back({g.edge_index_or_throw(t[0], t[1]), g.edge_index_or_throw(t[0], t[2]), g.edge_index_or_throw(t[1], t[2])});
    return out;
}

std::vector<Triangle> capped_triangles(const Graph& g, const Caps& caps, const char* op) {
    auto tris = triangles(g);
    if (tris.size() > caps.triangles)
        throw CapExceeded(std::string(op) + ": " + std::to_string(tris.size()) + " triangles exceeds the cap of " +
                          std::to_string(caps.triangles));
    return tris;
}

nlohmann::json coloring_json(const KEdgeChromaticSubgraph& m) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& ce : m.edges()) out.push_back({ce.edge.u, ce.edge.v, ce.color});
    return out;
}

}  // namespace

bool is_valid_packing(const Graph& g, const TrianglePacking& p) {
    std::vector<bool> used(g.edge_count(), false);
    for (const auto& t : p.triangles) {
        for (int a = 0; a < 3; ++a)
            if (t[static_cast<std::size_t>(a)] < 0 || t[static_cast<std::size_t>(a)] >= g.vertex_count()) return false;
        const Edge es[3] = {Edge::make(t[0], t[1]), Edge::make(t[0], t[2]), Edge::make(t[1], t[2])};
        for (const auto& e : es) {
            const auto idx = g.edge_index(e.u, e.v);
            if (!idx || used[*idx]) return false;
            used[*idx] = true;
        }
    }
    return true;
}

bool is_valid_cover(const Graph& g, const TriangleCover& c) {
    std::vector<bool> removed(g.edge_count(), false);
    for (const auto& e : c.edges) {
        const auto idx = g.edge_index(e.u, e.v);
        if (!idx) return false;
        removed[*idx] = true;
    }
    for (const auto& t : triangle_edges(g, triangles(g)))
        if (!removed[t[0]] && !removed[t[1]] && !removed[t[2]]) return false;
    return true;
}

TrianglePacking nu_exact(const Graph& g, const Caps& caps) {
    const auto tris = capped_triangles(g, caps, "nu_exact");
    const auto te = triangle_edges(g, tris);
    const std::size_t t_count = tris.size();

    std::vector<bool> used(g.edge_count(), false);
    auto fits = [&](std::size_t t) { return !used[te[t][0]] && !used[te[t][1]] && !used[te[t][2]]; };
    auto mark = [&](std::size_t t, bool on) {
        for (auto e : te[t]) used[e] = on;
    };

    std::vector<std::size_t> chosen, best;
    for (std::size_t t = 0; t < t_count; ++t)
        if (fits(t)) {
            mark(t, true);
            best.push_back(t);
        }
    std::fill(used.begin(), used.end(), false);

    std::vector<bool> seen(g.edge_count(), false);
    auto upper = [&](std::size_t from) {
        int compatible = 0, free_edges = 0;
        std::fill(seen.begin(), seen.end(), false);
        for (std::size_t t = from; t < t_count; ++t) {
            if (!fits(t)) continue;
            ++compatible;
            for (auto e : te[t])
                if (!seen[e]) {
                    seen[e] = true;
                    ++free_edges;
                }
        }
        return std::min(compatible, free_edges / 3);
    };

    std::function<void(std::size_t)> go = [&](std::size_t i) {
        while (i < t_count && !fits(i)) ++i;
        if (chosen.size() > best.size()) best = chosen;
        if (i == t_count) return;
        if (chosen.size() + static_cast<std::size_t>(upper(i)) <= best.size()) return;
        mark(i, true);
        chosen.push_back(i);
        go(i + 1);
        chosen.pop_back();
        mark(i, false);
        go(i + 1);
    };
    go(0);

    TrianglePacking out;
    for (auto t : best) out.triangles.push_back(tris[t]);
    std::sort(out.triangles.begin(), out.triangles.end());
    return out;
}

TriangleCover tau_exact(const Graph& g, const Caps& caps) {
    const auto tris = capped_triangles(g, caps, "tau_exact");
    const auto te = triangle_edges(g, tris);
    const std::size_t m = g.edge_count();

    std::vector<int> hit_count(tris.size(), 0);
    std::vector<bool> chosen(m, false), forbidden(m, false);
    std::vector<std::vector<std::size_t>> tris_of(m);
    for (std::size_t t = 0; t < te.size(); ++t)
        for (auto e : te[t]) tris_of[e].push_back(t);

    auto pick = [&](std::size_t e, bool on) {
        chosen[e] = on;
        for (auto t : tris_of[e]) hit_count[t] += on ? 1 : -1;
    };

    // Greedy incumbent: repeatedly take the edge in the most unhit triangles.
    std::vector<std::size_t> best;
    for (;;) {
        std::size_t arg = m;
        int most = 0;
        for (std::size_t e = 0; e < m; ++e) {
            if (chosen[e]) continue;
            int c = 0;
            for (auto t : tris_of[e]) c += hit_count[t] == 0 ? 1 : 0;
            if (c > most) {
                most = c;
                arg = e;
            }
        }
        if (arg == m) break;
        pick(arg, true);
        best.push_back(arg);
    }
    for (auto e : best) pick(e, false);

    std::vector<std::size_t> current;
    std::vector<bool> packed(m, false);
    std::function<void()> go = [&]() {
        if (current.size() >= best.size()) return;
        std::size_t first = tris.size();
        for (std::size_t t = 0; t < tris.size(); ++t)
            if (hit_count[t] == 0) {
                first = t;
                break;
            }
        if (first == tris.size()) {
            best = current;
            return;
        }
        // Unhit triangles that are disjoint on their still-allowed edges each need a distinct new edge.
        std::fill(packed.begin(), packed.end(), false);
        std::size_t bound = 0;
        for (std::size_t t = first; t < tris.size(); ++t) {
            if (hit_count[t] != 0) continue;
            bool any_allowed = false, clash = false;
            for (auto e : te[t])
                if (!forbidden[e]) {
                    any_allowed = true;
                    if (packed[e]) clash = true;
                }
            if (!any_allowed) return;
            if (clash) continue;
            for (auto e : te[t])
                if (!forbidden[e]) packed[e] = true;
            ++bound;
        }
        if (current.size() + bound >= best.size()) return;

        std::vector<std::size_t> newly_forbidden;
        for (auto e : te[first]) {
            if (forbidden[e]) continue;
            pick(e, true);
            current.push_back(e);
            go();
            current.pop_back();
            pick(e, false);
            forbidden[e] = true;
            newly_forbidden.push_back(e);
        }
        for (auto e : newly_forbidden) forbidden[e] = false;
    };
    go();

    TriangleCover out;
    for (auto e : best) out.edges.push_back(g.edge(e));
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

KEdgeChromaticSubgraph greedy_k_matchings(const Graph& g, int k) {
    if (k < 1) throw ContractViolation("k must be positive");
    const int n = g.vertex_count();
    std::vector<bool> taken(g.edge_count(), false);
    std::vector<ColoredEdge> out;
    for (int c = 1; c <= k; ++c) {
        std::vector<bool> busy(static_cast<std::size_t>(n), false);
        for (std::size_t i = 0; i < g.edge_count(); ++i) {
            const auto& e = g.edge(i);
            if (taken[i] || busy[static_cast<std::size_t>(e.u)] || busy[static_cast<std::size_t>(e.v)]) continue;
            taken[i] = true;
            busy[static_cast<std::size_t>(e.u)] = busy[static_cast<std::size_t>(e.v)] = true;
            out.push_back({e, c});
        }
    }
    std::sort(out.begin(), out.end());
    return KEdgeChromaticSubgraph(g, k, std::move(out));
}

KEdgeChromaticSubgraph vizing_color(const Graph& g) {
    const int n = g.vertex_count();
    const int palette = g.max_degree() + 1;
    // at[v][c] = neighbor joined to v by the edge of color c, or -1.
    std::vector<std::vector<Vertex>> at(static_cast<std::size_t>(n), std::vector<Vertex>(static_cast<std::size_t>(palette) + 1, -1));
    std::vector<int> col(g.edge_count(), 0);

    auto color_of = [&](Vertex a, Vertex b) { return col[g.edge_index_or_throw(a, b)]; };
    auto is_free = [&](Vertex v, int c) { return at[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] == -1; };
    auto set = [&](Vertex a, Vertex b, int c) {
        col[g.edge_index_or_throw(a, b)] = c;
        at[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] = b;
        at[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] = a;
    };
    auto unset = [&](Vertex a, Vertex b) {
        auto& c = col[g.edge_index_or_throw(a, b)];
        if (c == 0) return;
        at[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] = -1;
        at[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] = -1;
        c = 0;
    };
    auto first_free = [&](Vertex v) {
        for (int c = 1; c <= palette; ++c)
            if (is_free(v, c)) return c;
        throw ContractViolation("vizing_color: no free color");
    };

    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const Vertex u = g.edge(i).u;
        std::vector<Vertex> fan{g.edge(i).v};
        std::vector<bool> in_fan(static_cast<std::size_t>(n), false);
        in_fan[static_cast<std::size_t>(fan[0])] = true;
        for (bool grew = true; grew;) {
            grew = false;
            for (Vertex w : g.neighbors(u).members()) {
                if (in_fan[static_cast<std::size_t>(w)]) continue;
                const int c = color_of(u, w);
                if (c != 0 && is_free(fan.back(), c)) {
                    fan.push_back(w);
                    in_fan[static_cast<std::size_t>(w)] = true;
                    grew = true;
                    break;
                }
            }
        }
        const int c = first_free(u);
        const int d = first_free(fan.back());

        // Swap c and d along the alternating path leaving u on d.
        std::vector<std::pair<Vertex, Vertex>> path;
        std::vector<int> path_colors;
        for (Vertex cur = u, want = d;;) {
            const Vertex next = at[static_cast<std::size_t>(cur)][static_cast<std::size_t>(want)];
            if (next == -1 || c == d) break;
            path.emplace_back(cur, next);
            path_colors.push_back(want);
            cur = next;
            want = want == d ? c : d;
        }
        for (const auto& [a, b] : path) unset(a, b);
        for (std::size_t p = 0; p < path.size(); ++p) set(path[p].first, path[p].second, path_colors[p] == d ? c : d);

        std::size_t w = fan.size();
        for (std::size_t p = 0; p < fan.size(); ++p) {
            if (p > 0 && !is_free(fan[p - 1], color_of(u, fan[p]))) break;
            if (is_free(fan[p], d)) {
                w = p;
                break;
            }
        }
        if (w == fan.size()) throw ContractViolation("vizing_color: fan rotation failed");
        std::vector<int> shifted;
        for (std::size_t p = 0; p < w; ++p) shifted.push_back(color_of(u, fan[p + 1]));
        for (std::size_t p = 0; p <= w; ++p) unset(u, fan[p]);
        for (std::size_t p = 0; p < w; ++p) set(u, fan[p], shifted[p]);
        set(u, fan[w], d);
    }

    std::vector<ColoredEdge> out;
    for (std::size_t i = 0; i < g.edge_count(); ++i) out.push_back({g.edge(i), col[i]});
    return KEdgeChromaticSubgraph(g, palette, std::move(out));
}

KEdgeChromaticSubgraph alpha_k_prime(const Graph& g, int k, const Caps& caps) {
    if (k < 1) throw ContractViolation("k must be positive");
    if (k == 1) {
        std::vector<ColoredEdge> out;
        for (const auto& e : maximum_matching(g)) out.push_back({e, 1});
        return KEdgeChromaticSubgraph(g, 1, std::move(out));
    }
    if (g.max_degree() < k) {
        auto all = vizing_color(g);
        return KEdgeChromaticSubgraph(g, k, all.edges());
    }
    const std::size_t m = g.edge_count();
    if (m > caps.alpha_prime_edges)
        throw CapExceeded("alpha_k_prime: " + std::to_string(m) + " edges exceeds the cap of " + std::to_string(caps.alpha_prime_edges));

    const int n = g.vertex_count();
    const auto& es = g.edges();
    // rem[i][v]: edges with index >= i touching v.
    std::vector<std::vector<int>> rem(m + 1, std::vector<int>(static_cast<std::size_t>(n), 0));
    for (std::size_t i = m; i-- > 0;) {
        rem[i] = rem[i + 1];
        ++rem[i][static_cast<std::size_t>(es[i].u)];
        ++rem[i][static_cast<std::size_t>(es[i].v)];
    }

    auto seed = greedy_k_matchings(g, k);
    std::vector<int> best_color(m, 0);
    for (const auto& ce : seed.edges()) best_color[g.edge_index_or_throw(ce.edge.u, ce.edge.v)] = ce.color;
    int best = static_cast<int>(seed.size());

    std::vector<int> color(m, 0), load(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<bool>> has(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(k) + 1, false));
    std::vector<bool> mark(static_cast<std::size_t>(n));

    auto upper = [&](std::size_t i) {
        int vertex_bound = 0;
        for (int v = 0; v < n; ++v) vertex_bound += std::min(k - load[static_cast<std::size_t>(v)], rem[i][static_cast<std::size_t>(v)]);
        int color_bound = 0;
        for (int c = 1; c <= k; ++c) {
            std::fill(mark.begin(), mark.end(), false);
            int endpoints = 0;
            for (std::size_t j = i; j < m; ++j) {
                const auto u = static_cast<std::size_t>(es[j].u), v = static_cast<std::size_t>(es[j].v);
                if (has[u][static_cast<std::size_t>(c)] || has[v][static_cast<std::size_t>(c)]) continue;
                for (auto w : {u, v})
                    if (!mark[w]) {
                        mark[w] = true;
                        ++endpoints;
                    }
            }
            color_bound += endpoints / 2;
        }
        return std::min({static_cast<int>(m - i), vertex_bound / 2, color_bound});
    };

    const int ceiling = std::min(static_cast<int>(m), upper(0));
    std::function<void(std::size_t, int, int)> go = [&](std::size_t i, int count, int used_colors) {
        if (count > best) {
            best = count;
            best_color = color;
        }
        if (i == m || best >= ceiling) return;
        if (count + upper(i) <= best) return;
        const auto u = static_cast<std::size_t>(es[i].u), v = static_cast<std::size_t>(es[i].v);
        for (int c = 1; c <= std::min(used_colors + 1, k); ++c) {
            const auto cc = static_cast<std::size_t>(c);
            if (has[u][cc] || has[v][cc]) continue;
            has[u][cc] = has[v][cc] = true;
            ++load[u];
            ++load[v];
            color[i] = c;
            go(i + 1, count + 1, std::max(used_colors, c));
            color[i] = 0;
            --load[u];
            --load[v];
            has[u][cc] = has[v][cc] = false;
        }
        go(i + 1, count, used_colors);
    };
    go(0, 0, 0);

    std::vector<ColoredEdge> out;
    for (std::size_t i = 0; i < m; ++i)
        if (best_color[i] != 0) out.push_back({es[i], best_color[i]});
    return KEdgeChromaticSubgraph(g, k, std::move(out));
}

TrianglePacking packing_from_coloring(const Graph& h, int k, const KEdgeChromaticSubgraph& m) {
    if (!(m.base() == h)) throw ContractViolation("packing_from_coloring: coloring is not on h");
    if (m.k() > k) throw ContractViolation("packing_from_coloring: coloring uses more than k colors");
    if (!is_triangle_free(h)) throw ContractViolation("packing_from_coloring: h has a triangle");
    TrianglePacking out;
    for (const auto& ce : m.edges()) out.triangles.push_back({ce.color - 1, ce.edge.u + k, ce.edge.v + k});
    std::sort(out.triangles.begin(), out.triangles.end());
    return out;
}

TriangleCover cover_from_optimal_set(const Graph& h, int k, const VertexSet& d) {
    if (!is_k_dependent(h, k, d)) throw ContractViolation("cover_from_optimal_set: d is not k-dependent");
    if (!is_triangle_free(h)) throw ContractViolation("cover_from_optimal_set: h has a triangle");
    TriangleCover out;
    for (const auto& e : h.edges())
        if (d.contains(e.u) && d.contains(e.v)) out.edges.push_back({e.u + k, e.v + k});
    for (Vertex a = 0; a < k; ++a)
        for (Vertex w = 0; w < h.vertex_count(); ++w)
            if (!d.contains(w)) out.edges.push_back({a, w + k});
    std::sort(out.edges.begin(), out.edges.end());

    const Graph joined = join_independent(k, h);
    if (static_cast<int>(out.size()) != k * h.vertex_count() - phi_k(h, k, d) || !is_valid_cover(joined, out)) {
        nlohmann::json p = {{"h", detail::graph_json(h)}, {"k", k}, {"d", detail::set_json(d)}};
        throw Counterexample("cover_from_optimal_set: cover is wrong size or leaves a triangle", p.dump());
    }
    return out;
}

NormalizedCover normalize_cover(const Graph& h, int k, const TriangleCover& cover) {
    const Graph joined = join_independent(k, h);
    if (!is_valid_cover(joined, cover)) throw ContractViolation("normalize_cover: not a triangle cover of I_k v h");
    const int n = h.vertex_count();

    std::vector<VertexSet> deleted(static_cast<std::size_t>(k), VertexSet(n));
    for (const auto& e : cover.edges)
        if (e.u < k) deleted[static_cast<std::size_t>(e.u)].insert(e.v - k);
    Vertex chosen = 0;
    for (Vertex a = 1; a < k; ++a)
        if (deleted[static_cast<std::size_t>(a)].size() < deleted[static_cast<std::size_t>(chosen)].size()) chosen = a;

    NormalizedCover out;
    out.chosen_apex = chosen;
    out.d = deleted[static_cast<std::size_t>(chosen)].complement();
    for (const auto& e : cover.edges)
        if (e.u >= k) out.cover.edges.push_back(e);
    for (Vertex a = 0; a < k; ++a)
        for (Vertex w : deleted[static_cast<std::size_t>(chosen)].members()) out.cover.edges.push_back({a, w + k});
    std::sort(out.cover.edges.begin(), out.cover.edges.end());

    int inside = 0;
    for (const auto& e : h.edges())
        if (out.d.contains(e.u) && out.d.contains(e.v)) ++inside;
    const bool ok = out.cover.size() <= cover.size() && is_valid_cover(joined, out.cover) &&
                    static_cast<int>(out.cover.size()) >= inside + k * (n - out.d.size());
    if (!ok) {
        nlohmann::json p = {{"h", detail::graph_json(h)}, {"k", k}, {"cover", nlohmann::json::array()}};
        for (const auto& e : cover.edges) p["cover"].push_back({e.u, e.v});
        throw Counterexample("normalize_cover: normalized cover is larger or misses a triangle", p.dump());
    }
    return out;
}

TuzaConnectionReport verify_tuza_connection(const Graph& h, int k, const Caps& caps) {
    if (k < 1) throw ContractViolation("k must be positive");
    if (!is_triangle_free(h)) throw ContractViolation("verify_tuza_connection: h has a triangle");
    const Graph joined = join_independent(k, h);

    TuzaConnectionReport r;
    r.k = k;
    r.n = h.vertex_count();
    r.packing = nu_exact(joined, caps);
    r.cover = tau_exact(joined, caps);
    r.coloring = alpha_k_prime(h, k, caps);
    const auto opt = k_optimal_exhaustive(h, k, caps);
    r.optimal_set = opt.d;
    r.nu = static_cast<int>(r.packing.size());
    r.tau = static_cast<int>(r.cover.size());
    r.alpha_prime = static_cast<int>(r.coloring.size());
    r.phi_max = opt.phi;

    if (r.nu > r.tau || r.tau > 3 * r.nu) {
        nlohmann::json p = {{"h", detail::graph_json(h)}, {"k", k}, {"nu", r.nu}, {"tau", r.tau}};
        throw Counterexample("nu <= tau <= 3 nu failed on I_k v h", p.dump());
    }

    const auto from_coloring = packing_from_coloring(h, k, r.coloring);
    const auto from_set = cover_from_optimal_set(h, k, opt.d);
    const auto normalized = normalize_cover(h, k, r.cover);
    r.translations_ok = is_valid_packing(joined, from_coloring) && from_coloring.size() == r.coloring.size() &&
                        is_valid_cover(joined, from_set) &&
                        static_cast<int>(normalized.cover.size()) >= r.k * r.n - r.phi_max;
    return r;
}

KEdgeChromaticSubgraph edgetuza_pipeline(const Graph& g, int k, const VertexSet& d, const KEdgeChromaticSubgraph& saturating) {
    if (!(saturating.base() == g)) throw ContractViolation("edgetuza_pipeline: subgraph is not on g");
    if (saturating.k() > k) throw ContractViolation("edgetuza_pipeline: subgraph uses more than k colors");
    if (!is_k_dependent(g, k, d)) throw ContractViolation("edgetuza_pipeline: d is not k-dependent");
    const int n = g.vertex_count();
    for (Vertex x = 0; x < n; ++x)
        if (!d.contains(x) && saturating.degree(x) != k)
            throw ContractViolation("edgetuza_pipeline: vertex " + std::to_string(x) + " outside d does not have degree k");

    // Edges inside d play no part in saturating X; drop them.
    std::vector<std::vector<Edge>> outer(static_cast<std::size_t>(k) + 1);
    int q = 0, kept = 0;
    for (const auto& ce : saturating.edges()) {
        const bool du = d.contains(ce.edge.u), dv = d.contains(ce.edge.v);
        if (du && dv) continue;
        if (du != dv) ++q;
        ++kept;
        outer[static_cast<std::size_t>(ce.color)].push_back(ce.edge);
    }

    const auto inner = induced_subgraph(g, d);
    const auto inner_coloring = vizing_color(inner.graph);
    std::vector<std::vector<Edge>> inner_classes(static_cast<std::size_t>(k) + 1);
    for (const auto& ce : inner_coloring.edges()) {
        // max degree of G[d] is at most k - 1, so Vizing stays within k colors.
        if (ce.color > k) throw ContractViolation("edgetuza_pipeline: G[d] needs more than k colors");
        inner_classes[static_cast<std::size_t>(ce.color)].push_back(
            Edge::make(inner.to_parent[static_cast<std::size_t>(ce.edge.u)], inner.to_parent[static_cast<std::size_t>(ce.edge.v)]));
    }

    std::vector<ColoredEdge> t;
    int inner_kept = 0;
    for (int c = 1; c <= k; ++c) {
        const auto& mc = outer[static_cast<std::size_t>(c)];
        for (const auto& e : mc) t.push_back({e, c});
        for (const auto& e : inner_classes[static_cast<std::size_t>(c)]) {
            const bool blocked = std::any_of(mc.begin(), mc.end(), [&](const Edge& f) { return f.meets(e); });
            if (!blocked) {
                t.push_back({e, c});
                ++inner_kept;
            }
        }
    }
    std::sort(t.begin(), t.end());

    const int outside = n - d.size();
    const int r = static_cast<int>(inner.graph.edge_count()) - inner_kept;
    const bool chain_ok = 2 * kept == k * outside + q && r <= q && 2 * static_cast<int>(t.size()) >= k * n - phi_k(g, k, d);
    if (!chain_ok) {
        nlohmann::json p = {{"graph", detail::graph_json(g)}, {"k", k}, {"d", detail::set_json(d)}, {"saturating", coloring_json(saturating)}};
        throw Counterexample("edgetuza_pipeline: counting chain failed", p.dump());
    }
    return KEdgeChromaticSubgraph(g, k, std::move(t));
}

}  // namespace koptlab
