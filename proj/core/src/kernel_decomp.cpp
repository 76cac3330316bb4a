#include "koptlab/kernel_decomp.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "koptlab/errors.hpp"
#include "payload.hpp"

namespace koptlab {

namespace {

nlohmann::json certificate_json(const GoodDecompositionCertificate& cert) {
    return {{"n", cert.base.base().vertex_count()}, {"arcs", detail::arcs_json(cert.base)}, {"layers", cert.decomposition.layers}};
}

[[noreturn]] void falsified(const std::string& what, const Graph& g, const GoodDecompositionCertificate& cert, const ListAssignment& l) {
    nlohmann::json p = {{"graph", detail::graph_json(g)}, {"certificate", certificate_json(cert)}, {"lists", l.lists()}};
    throw Counterexample("decomposition_to_saturating: " + what, p.dump());
}

// Vertices of the weak component of v in the arc set `arcs` of j.
std::vector<Vertex> component_of(const Orientation& j, const std::vector<std::size_t>& arcs, Vertex v) {
    const int n = j.base().vertex_count();
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    for (auto a : arcs) {
        const auto arc = j.arc(a);
        adj[static_cast<std::size_t>(arc.tail)].push_back(arc.head);
        adj[static_cast<std::size_t>(arc.head)].push_back(arc.tail);
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Vertex> out{v}, stack{v};
    seen[static_cast<std::size_t>(v)] = true;
    while (!stack.empty()) {
        const Vertex x = stack.back();
        stack.pop_back();
        for (Vertex y : adj[static_cast<std::size_t>(x)])
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = true;
                out.push_back(y);
                stack.push_back(y);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

enum class AssignResult { found, none, budget };

// Out-arcs of u take layers 1..outdeg(u) bijectively, in-arcs of v take distinct
// layers. Given no directed odd cycle, this is exactly a good decomposition.
AssignResult assign_layers(const Orientation& j, std::vector<int>& label, std::uint64_t& nodes, std::uint64_t budget,
                           std::atomic<std::uint64_t>* shared_nodes) {
    const int n = j.base().vertex_count();
    const std::size_t m = j.arc_count();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return j.arc(a).tail < j.arc(b).tail; });
    for (Vertex v = 0; v < n; ++v)
        if (j.outdegree(v) > 62) throw CapExceeded("layer assignment supports outdegree at most 62");
    std::vector<std::uint64_t> used_out(static_cast<std::size_t>(n), 0), used_in(static_cast<std::size_t>(n), 0);
    label.assign(m, 0);
    bool out_of_budget = false;

    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == m) return true;
        const auto arc = j.arc(order[i]);
        const auto t = static_cast<std::size_t>(arc.tail), h = static_cast<std::size_t>(arc.head);
        for (int layer = 1; layer <= j.outdegree(arc.tail); ++layer) {
            const std::uint64_t bit = std::uint64_t{1} << layer;
            if ((used_out[t] & bit) || (used_in[h] & bit)) continue;
            ++nodes;
            const std::uint64_t total = shared_nodes ? shared_nodes->fetch_add(1) + 1 : nodes;
            if (budget != 0 && total > budget) {
                out_of_budget = true;
                return false;
            }
            used_out[t] |= bit;
            used_in[h] |= bit;
            label[order[i]] = layer;
            if (go(i + 1)) return true;
            used_out[t] &= ~bit;
            used_in[h] &= ~bit;
            label[order[i]] = 0;
            if (out_of_budget) return false;
        }
        return false;
    };
    if (go(0)) return AssignResult::found;
    return out_of_budget ? AssignResult::budget : AssignResult::none;
}

SequentialDecomposition layers_from_labels(const std::vector<int>& label) {
    SequentialDecomposition out;
    for (std::size_t a = 0; a < label.size(); ++a) {
        const auto idx = static_cast<std::size_t>(label[a] - 1);
        if (out.layers.size() <= idx) out.layers.resize(idx + 1);
        out.layers[idx].push_back(a);
    }
    return out;
}

}  // namespace

std::optional<std::vector<Vertex>> find_directed_odd_cycle(const Orientation& j) {
    const int n = j.base().vertex_count();
    std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(n));
    for (const auto& a : j.arcs()) out[static_cast<std::size_t>(a.tail)].push_back(a.head);

    // Tarjan's strongly connected components.
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0), comp(static_cast<std::size_t>(n), -1);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<Vertex> stack;
    int counter = 0, comps = 0;
    std::function<void(Vertex)> strong = [&](Vertex v) {
        const auto sv = static_cast<std::size_t>(v);
        index[sv] = low[sv] = counter++;
        stack.push_back(v);
        on_stack[sv] = true;
        for (Vertex w : out[sv]) {
            const auto sw = static_cast<std::size_t>(w);
            if (index[sw] == -1) {
                strong(w);
                low[sv] = std::min(low[sv], low[sw]);
            } else if (on_stack[sw]) {
                low[sv] = std::min(low[sv], index[sw]);
            }
        }
        if (low[sv] == index[sv]) {
            for (Vertex w = -1; w != v;) {
                w = stack.back();
                stack.pop_back();
                on_stack[static_cast<std::size_t>(w)] = false;
                comp[static_cast<std::size_t>(w)] = comps;
            }
            ++comps;
        }
    };
    for (Vertex v = 0; v < n; ++v)
        if (index[static_cast<std::size_t>(v)] == -1) strong(v);

    // Inside a strong component an odd closed walk through any vertex exists iff the
    // component has an odd directed cycle; search (vertex, parity) states from one root.
    std::vector<bool> rooted(static_cast<std::size_t>(comps), false);
    for (Vertex s = 0; s < n; ++s) {
        const int c = comp[static_cast<std::size_t>(s)];
        if (rooted[static_cast<std::size_t>(c)]) continue;
        rooted[static_cast<std::size_t>(c)] = true;
        std::vector<int> parent(2 * static_cast<std::size_t>(n), -2);
        std::vector<int> queue{2 * s};
        parent[2 * static_cast<std::size_t>(s)] = -1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const int state = queue[qi];
            const Vertex v = state / 2;
            const int parity = state % 2;
            for (Vertex w : out[static_cast<std::size_t>(v)]) {
                if (comp[static_cast<std::size_t>(w)] != c) continue;
                const int next = 2 * w + (1 - parity);
                if (parent[static_cast<std::size_t>(next)] != -2) continue;
                parent[static_cast<std::size_t>(next)] = state;
                queue.push_back(next);
            }
        }
        if (parent[2 * static_cast<std::size_t>(s) + 1] == -2) continue;

        std::vector<Vertex> walk;
        for (int state = 2 * s + 1; state != -1; state = parent[static_cast<std::size_t>(state)]) walk.push_back(state / 2);
        std::reverse(walk.begin(), walk.end());  // s ... s, odd number of arcs

        // Peel simple cycles off the closed walk; the even ones are discarded.
        std::vector<Vertex> path;
        std::vector<int> pos(static_cast<std::size_t>(n), -1);
        for (Vertex x : walk) {
            const int at = pos[static_cast<std::size_t>(x)];
            if (at == -1) {
                pos[static_cast<std::size_t>(x)] = static_cast<int>(path.size());
                path.push_back(x);
                continue;
            }
            const auto len = path.size() - static_cast<std::size_t>(at);
            if (len % 2 == 1) return std::vector<Vertex>(path.begin() + at, path.end());
            for (std::size_t p = static_cast<std::size_t>(at) + 1; p < path.size(); ++p) pos[static_cast<std::size_t>(path[p])] = -1;
            path.resize(static_cast<std::size_t>(at) + 1);
        }
        throw Counterexample("find_directed_odd_cycle: odd closed walk without an odd cycle", "{}");
    }
    return std::nullopt;
}

ValidationOutcome validate_good(const Orientation& base, const SequentialDecomposition& layers) {
    using Kind = InvalidReason::Kind;
    const std::size_t m = base.arc_count();
    const int n = base.base().vertex_count();

    std::vector<int> layer_of(m, -1);
    for (std::size_t i = 0; i < layers.layers.size(); ++i)
        for (auto a : layers.layers[i]) {
            if (a >= m) return InvalidReason{Kind::malformed, "arc index " + std::to_string(a) + " out of range", {}};
            if (layer_of[a] != -1) return InvalidReason{Kind::malformed, "arc " + std::to_string(a) + " appears in two layers", {}};
            layer_of[a] = static_cast<int>(i);
        }
    for (std::size_t a = 0; a < m; ++a)
        if (layer_of[a] == -1) return InvalidReason{Kind::malformed, "arc " + std::to_string(a) + " is in no layer", {}};
    if (!layers.layers.empty() && layers.layers.back().empty()) return InvalidReason{Kind::malformed, "empty trailing layer", {}};

    if (auto cycle = find_directed_odd_cycle(base)) return InvalidReason{Kind::odd_cycle, "base has a directed odd cycle", *cycle};

    std::vector<std::vector<int>> outdeg(layers.layers.size(), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (std::size_t i = 0; i < layers.layers.size(); ++i) {
        const auto& layer = layers.layers[i];
        std::vector<int> in(static_cast<std::size_t>(n), 0);
        for (auto a : layer) {
            const auto arc = base.arc(a);
            const int o = ++outdeg[i][static_cast<std::size_t>(arc.tail)];
            const int d = ++in[static_cast<std::size_t>(arc.head)];
            if (o > 1 || d > 1) {
                const Vertex v = o > 1 ? arc.tail : arc.head;
                return InvalidReason{Kind::bad_component, "layer " + std::to_string(i) + " branches at vertex " + std::to_string(v),
                                     component_of(base, layer, v)};
            }
        }
        // With in/out degree at most 1, a component is a cycle iff it has as many arcs as vertices.
        std::vector<bool> done(static_cast<std::size_t>(n), false);
        for (auto a : layer) {
            const Vertex v = base.arc(a).tail;
            if (done[static_cast<std::size_t>(v)]) continue;
            const auto comp = component_of(base, layer, v);
            std::size_t arcs = 0;
            for (auto b : layer) arcs += std::binary_search(comp.begin(), comp.end(), base.arc(b).tail) ? 1 : 0;
            for (Vertex x : comp) done[static_cast<std::size_t>(x)] = true;
            if (arcs == comp.size() && comp.size() % 2 == 1)
                return InvalidReason{Kind::bad_component, "layer " + std::to_string(i) + " has an odd cycle", comp};
        }
    }
    for (std::size_t i = 0; i + 1 < layers.layers.size(); ++i)
        for (Vertex v = 0; v < n; ++v)
            if (outdeg[i][static_cast<std::size_t>(v)] < outdeg[i + 1][static_cast<std::size_t>(v)])
                return InvalidReason{Kind::not_monotone,
                                     "outdegree of vertex " + std::to_string(v) + " increases after layer " + std::to_string(i),
                                     {v, static_cast<Vertex>(i)}};
    return GoodDecompositionCertificate{base, layers};
}

std::optional<SequentialDecomposition> good_layers_for(const Orientation& j, std::uint64_t* nodes) {
    if (find_directed_odd_cycle(j)) return std::nullopt;
    std::vector<int> label;
    std::uint64_t local = 0;
    const auto r = assign_layers(j, label, local, 0, nullptr);
    if (nodes) *nodes += local;
    if (r != AssignResult::found) return std::nullopt;
    return layers_from_labels(label);
}

DecompositionSearchResult search_good_decomposition(const Graph& g, const DecompositionSearchOptions& options, const Caps& caps) {
    const std::size_t m = g.edge_count();
    auto base = std::make_shared<const Graph>(g);
    DecompositionSearchResult result;

    if (m > caps.decomposition_edges) {
        if (options.budget == 0)
            throw CapExceeded("search_good_decomposition: " + std::to_string(m) + " edges exceeds the cap of " +
                              std::to_string(caps.decomposition_edges) + " and no sampling budget was given");
        std::mt19937_64 rng(options.seed);
        std::bernoulli_distribution coin(0.5);
        while (result.nodes < options.budget) {
            std::vector<bool> forward(m);
            for (std::size_t i = 0; i < m; ++i) forward[i] = coin(rng);
            Orientation j(base, forward);
            ++result.orientations_tried;
            ++result.nodes;
            if (find_directed_odd_cycle(j)) continue;
            std::vector<int> label;
            std::uint64_t nodes = 0;
            const auto r = assign_layers(j, label, nodes, options.budget - std::min(options.budget, result.nodes), nullptr);
            result.nodes += nodes;
            if (r == AssignResult::found) {
                result.status = DecompositionSearchResult::Status::found;
                result.certificate = GoodDecompositionCertificate{j, layers_from_labels(label)};
                return result;
            }
        }
        result.status = DecompositionSearchResult::Status::exhausted_budget;
        return result;
    }

    const std::uint64_t total = std::uint64_t{1} << m;
    const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(total)));
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    std::atomic<std::uint64_t> shared_nodes{0}, tried{0};
    std::atomic<bool> budget_hit{false};
    std::vector<std::optional<std::pair<std::uint64_t, std::vector<int>>>> found(static_cast<std::size_t>(jobs));

    auto worker = [&](int w) {
        const std::uint64_t lo = total * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(jobs);
        const std::uint64_t hi = total * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(jobs);
        for (std::uint64_t i = lo; i < hi && i < best.load() && !budget_hit.load(); ++i) {
            const auto j = Orientation::from_bits(base, i ^ (i >> 1));
            tried.fetch_add(1);
            if (find_directed_odd_cycle(j)) continue;
            std::vector<int> label;
            std::uint64_t nodes = 0;
            const auto r = assign_layers(j, label, nodes, options.budget, &shared_nodes);
            if (r == AssignResult::budget) {
                budget_hit = true;
                return;
            }
            if (r == AssignResult::found) {
                found[static_cast<std::size_t>(w)] = std::make_pair(i, std::move(label));
                std::uint64_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
                return;
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    result.orientations_tried = tried.load();
    result.nodes = shared_nodes.load();
    const std::optional<std::pair<std::uint64_t, std::vector<int>>>* first = nullptr;
    for (const auto& f : found)
        if (f && (!first || f->first < (*first)->first)) first = &f;
    if (first) {
        const auto i = (*first)->first;
        result.status = DecompositionSearchResult::Status::found;
        result.certificate = GoodDecompositionCertificate{Orientation::from_bits(base, i ^ (i >> 1)), layers_from_labels((*first)->second)};
    } else {
        result.status = budget_hit ? DecompositionSearchResult::Status::exhausted_budget : DecompositionSearchResult::Status::exhausted_full;
    }
    return result;
}

std::optional<VertexSet> kernel_bruteforce(const Orientation& j, const VertexSet& within, const Caps& caps) {
    const auto members = within.members();
    if (members.size() > caps.kernel_vertices)
        throw CapExceeded("kernel_bruteforce: " + std::to_string(members.size()) + " vertices exceeds the cap of " +
                          std::to_string(caps.kernel_vertices));
    const std::size_t s = members.size();
    std::vector<std::vector<bool>> arc(s, std::vector<bool>(s, false));
    for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = 0; b < s; ++b)
            if (a != b) arc[a][b] = j.has_arc(members[a], members[b]);

    // Kernels are maximal independent sets, so none is a prefix of another and
    // include-first order reaches the lexicographically least one first.
    std::vector<bool> in(s, false);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == s) {
            for (std::size_t v = 0; v < s; ++v) {
                if (in[v]) continue;
                bool absorbed = false;
                for (std::size_t w = 0; w < s && !absorbed; ++w) absorbed = in[w] && arc[v][w];
                if (!absorbed) return false;
            }
            return true;
        }
        bool independent = true;
        for (std::size_t w = 0; w < i && independent; ++w) independent = !(in[w] && (arc[i][w] || arc[w][i]));
        if (independent) {
            in[i] = true;
            if (go(i + 1)) return true;
            in[i] = false;
        }
        // An excluded vertex whose out-neighbors are all decided must already be absorbed.
        bool later_out = false, absorbed = false;
        for (std::size_t w = 0; w < s; ++w) {
            if (!arc[i][w]) continue;
            if (w > i) later_out = true;
            else if (in[w]) absorbed = true;
        }
        if (!later_out && !absorbed) return false;
        return go(i + 1);
    };
    if (!go(0)) return std::nullopt;
    VertexSet out(within.universe());
    for (std::size_t v = 0; v < s; ++v)
        if (in[v]) out.insert(members[v]);
    return out;
}

Orientation galvin_orientation(const BipartiteSplit& u, const std::vector<int>& phi) {
    const auto& cross = u.cross_edges();
    if (phi.size() != cross.size()) throw ContractViolation("galvin_orientation: one color per bigraph edge required");
    std::vector<Edge> line_edges;
    std::vector<Arc> arcs;
    for (std::size_t a = 0; a < cross.size(); ++a)
        for (std::size_t b = a + 1; b < cross.size(); ++b) {
            if (!cross[a].meets(cross[b])) continue;
            if (phi[a] == phi[b]) throw ContractViolation("galvin_orientation: coloring is not proper");
            const Vertex shared = cross[b].touches(cross[a].u) ? cross[a].u : cross[a].v;
            const auto lo = static_cast<Vertex>(phi[a] < phi[b] ? a : b);
            const auto hi = static_cast<Vertex>(phi[a] < phi[b] ? b : a);
            line_edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
            arcs.push_back(u.x_side().contains(shared) ? Arc{lo, hi} : Arc{hi, lo});
        }
    return Orientation::from_arcs(Graph(static_cast<int>(cross.size()), line_edges), arcs);
}

PartialEdgeColoring decomposition_to_saturating(const Graph& g, const GoodDecompositionCertificate& cert, const ListAssignment& l,
                                                const Caps& caps) {
    const Orientation& j = cert.base;
    if (!(j.base() == g)) throw ContractViolation("decomposition_to_saturating: certificate is for a different graph");
    const auto validity = validate_good(j, cert.decomposition);
    if (const auto* bad = std::get_if<InvalidReason>(&validity))
        throw ContractViolation("decomposition_to_saturating: certificate is not good: " + bad->message);
    const int n = g.vertex_count();
    if (l.vertex_count() != n) throw ContractViolation("decomposition_to_saturating: list assignment has the wrong size");
    for (Vertex v = 0; v < n; ++v)
        if (static_cast<int>(l.of(v).size()) > j.outdegree(v))
            throw ContractViolation("decomposition_to_saturating: list of vertex " + std::to_string(v) + " is longer than its outdegree");

    // (1) U: u_x = u, v_y = n + v, one edge per arc.
    std::vector<Edge> u_edges;
    for (const auto& a : j.arcs()) u_edges.push_back({a.tail, n + a.head});
    VertexSet y_side(2 * n);
    for (Vertex v = 0; v < n; ++v) y_side.insert(n + v);
    const BipartiteSplit u(Graph(2 * n, u_edges), y_side);
    const auto& cross = u.cross_edges();
    std::vector<std::size_t> arc_of(cross.size());
    for (std::size_t i = 0; i < cross.size(); ++i) arc_of[i] = g.edge_index_or_throw(cross[i].u, cross[i].v - n);

    // (2) Layer index as the edge coloring of U.
    std::vector<int> layer_of(g.edge_count(), 0);
    for (std::size_t i = 0; i < cert.decomposition.layers.size(); ++i)
        for (auto a : cert.decomposition.layers[i]) layer_of[a] = static_cast<int>(i) + 1;
    std::vector<int> phi(cross.size());
    for (std::size_t i = 0; i < cross.size(); ++i) phi[i] = layer_of[arc_of[i]];
    if (!is_proper_coloring(2 * n, static_cast<int>(cert.decomposition.layers.size()),
                            [&] {
                                std::vector<ColoredEdge> ce;
                                for (std::size_t i = 0; i < cross.size(); ++i) ce.push_back({cross[i], phi[i]});
                                return ce;
                            }()))
        falsified("layer coloring of U is not proper", g, cert, l);
    for (Vertex v = 0; v < n; ++v) {
        std::vector<int> seen;
        for (std::size_t i = 0; i < cross.size(); ++i)
            if (cross[i].u == v) seen.push_back(phi[i]);
        std::sort(seen.begin(), seen.end());
        for (std::size_t p = 0; p < seen.size(); ++p)
            if (seen[p] != static_cast<int>(p) + 1) falsified("colors at a tail copy are not 1..deg", g, cert, l);
    }

    // (3) Pad lists to exactly the outdegree; (4) lift them to the line graph.
    const int real_max = l.max_color();
    std::vector<std::vector<int>> padded = l.lists();
    for (Vertex v = 0; v < n; ++v)
        for (int dummy = real_max + 1; static_cast<int>(padded[static_cast<std::size_t>(v)].size()) < j.outdegree(v); ++dummy)
            padded[static_cast<std::size_t>(v)].push_back(dummy);
    std::vector<std::vector<int>> line_list(cross.size());
    for (std::size_t i = 0; i < cross.size(); ++i) line_list[i] = padded[static_cast<std::size_t>(cross[i].u)];

    // (5) Kernel-greedy list coloring of the line graph.
    const auto z = galvin_orientation(u, phi);
    for (std::size_t i = 0; i < cross.size(); ++i)
        if (z.outdegree(static_cast<Vertex>(i)) > j.outdegree(cross[i].u) - 1) falsified("line-graph vertex has too many out-neighbors", g, cert, l);
    std::vector<int> all_colors;
    for (const auto& pl : padded) all_colors.insert(all_colors.end(), pl.begin(), pl.end());
    std::sort(all_colors.begin(), all_colors.end());
    all_colors.erase(std::unique(all_colors.begin(), all_colors.end()), all_colors.end());

    const int line_n = static_cast<int>(cross.size());
    std::vector<int> psi(cross.size(), 0);
    for (int c : all_colors) {
        VertexSet w(line_n);
        for (std::size_t i = 0; i < cross.size(); ++i)
            if (psi[i] == 0 && std::find(line_list[i].begin(), line_list[i].end(), c) != line_list[i].end()) w.insert(static_cast<Vertex>(i));
        if (w.empty()) continue;
        const auto kernel = kernel_bruteforce(z, w, caps);
        if (!kernel) falsified("induced subdigraph of the line-graph orientation has no kernel", g, cert, l);
        for (Vertex i : w.members()) {
            if (kernel->contains(i)) psi[static_cast<std::size_t>(i)] = c;
            else std::erase(line_list[static_cast<std::size_t>(i)], c);
        }
    }
    if (std::count(psi.begin(), psi.end(), 0) != 0) falsified("kernel-greedy left a line-graph vertex uncolored", g, cert, l);

    // (6) Per color, J_c has in/out degree <= 1; take a matching covering its tails.
    PartialEdgeColoring xi(g);
    for (int c : all_colors) {
        std::vector<Arc> jc;
        for (std::size_t i = 0; i < cross.size(); ++i)
            if (psi[i] == c) jc.push_back({cross[i].u, cross[i].v - n});
        if (jc.empty()) continue;
        std::vector<int> succ(static_cast<std::size_t>(n), -1), indeg(static_cast<std::size_t>(n), 0);
        for (const auto& a : jc) {
            if (succ[static_cast<std::size_t>(a.tail)] != -1 || indeg[static_cast<std::size_t>(a.head)] != 0)
                falsified("a color class of the line graph is not a matching of U", g, cert, l);
            succ[static_cast<std::size_t>(a.tail)] = a.head;
            ++indeg[static_cast<std::size_t>(a.head)];
        }
        std::vector<bool> visited(static_cast<std::size_t>(n), false);
        std::vector<Edge> mc;
        for (Vertex start = 0; start < n; ++start) {
            if (indeg[static_cast<std::size_t>(start)] != 0 || succ[static_cast<std::size_t>(start)] == -1) continue;
            int position = 0;
            for (Vertex v = start; succ[static_cast<std::size_t>(v)] != -1; v = succ[static_cast<std::size_t>(v)], ++position) {
                visited[static_cast<std::size_t>(v)] = true;
                if (position % 2 == 0) mc.push_back(Edge::make(v, succ[static_cast<std::size_t>(v)]));
            }
        }
        for (Vertex start = 0; start < n; ++start) {
            if (visited[static_cast<std::size_t>(start)] || succ[static_cast<std::size_t>(start)] == -1) continue;
            std::vector<Arc> cycle;
            for (Vertex v = start; !visited[static_cast<std::size_t>(v)]; v = succ[static_cast<std::size_t>(v)]) {
                visited[static_cast<std::size_t>(v)] = true;
                cycle.push_back({v, succ[static_cast<std::size_t>(v)]});
            }
            if (cycle.size() % 2 == 1) falsified("a color class contains a directed odd cycle", g, cert, l);
            const auto least = static_cast<std::size_t>(std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
            for (std::size_t p = least % 2; p < cycle.size(); p += 2) mc.push_back(Edge::make(cycle[p].tail, cycle[p].head));
        }
        for (const auto& a : jc)
            if (std::none_of(mc.begin(), mc.end(), [&](const Edge& e) { return e.touches(a.tail); }))
                falsified("matching misses a vertex with positive outdegree", g, cert, l);
        // (7) Real colors only; dummies are dropped here.
        if (c > real_max) continue;
        for (const auto& e : mc) xi.assign(e.u, e.v, c);
    }
    if (!is_saturating(g, l, xi)) falsified("result is not saturating", g, cert, l);
    return xi;
}

std::string certificate_to_json(const GoodDecompositionCertificate& cert) { return certificate_json(cert).dump(); }

GoodDecompositionCertificate certificate_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("certificate JSON: ") + e.what(), e.byte);
    }
    try {
        std::vector<Arc> arcs;
        int n = 0;
        for (const auto& a : doc.at("arcs")) {
            arcs.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
            n = std::max({n, arcs.back().tail + 1, arcs.back().head + 1});
        }
        if (doc.contains("n")) n = doc.at("n").get<int>();
        std::vector<Edge> edges;
        for (const auto& a : arcs) edges.push_back(Edge::make(a.tail, a.head));
        const Graph g(n, edges);
        // Layer entries index the arcs as listed; convert to the graph's edge order.
        std::vector<std::size_t> edge_of;
        for (const auto& a : arcs) edge_of.push_back(g.edge_index_or_throw(a.tail, a.head));
        SequentialDecomposition dec;
        for (const auto& layer : doc.at("layers")) {
            dec.layers.emplace_back();
            for (const auto& idx : layer) {
                const auto i = idx.get<std::size_t>();
                if (i >= arcs.size()) throw ContractViolation("certificate layer refers to a missing arc");
                dec.layers.back().push_back(edge_of[i]);
            }
            std::sort(dec.layers.back().begin(), dec.layers.back().end());
        }
        return {Orientation::from_arcs(g, arcs), dec};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("certificate JSON: ") + e.what(), 0);
    }
}

}  // namespace koptlab
