#include <doctest.h>

#include <random>

#include "koptlab/errors.hpp"
#include "koptlab/kernel_decomp.hpp"
#include "oracles.hpp"

using namespace koptlab;

namespace {

Orientation orient(int n, std::vector<Arc> arcs) {
    std::vector<Edge> es;
    for (const auto& a : arcs) es.push_back(Edge::make(a.tail, a.head));
    return Orientation::from_arcs(Graph(n, es), arcs);
}

// Layers given as arc lists, converted to edge indices of j's base.
SequentialDecomposition layers_of(const Orientation& j, const std::vector<std::vector<Arc>>& layers) {
    SequentialDecomposition out;
    for (const auto& layer : layers) {
        out.layers.emplace_back();
        for (const auto& a : layer) out.layers.back().push_back(j.base().edge_index_or_throw(a.tail, a.head));
    }
    return out;
}

InvalidReason::Kind invalid_kind(const ValidationOutcome& o) {
    REQUIRE(std::holds_alternative<InvalidReason>(o));
    return std::get<InvalidReason>(o).kind;
}

// Directed odd cycle by enumerating simple cycles through DFS from every start.
bool has_odd_cycle_brute(const Orientation& j) {
    const int n = j.base().vertex_count();
    std::vector<bool> on(static_cast<std::size_t>(n), false);
    std::function<bool(Vertex, Vertex, int)> dfs = [&](Vertex start, Vertex v, int len) {
        for (Vertex w : j.out_neighbors(v)) {
            if (w == start && len % 2 == 1) return true;
            if (w <= start || on[static_cast<std::size_t>(w)]) continue;
            on[static_cast<std::size_t>(w)] = true;
            const bool found = dfs(start, w, len + 1);
            on[static_cast<std::size_t>(w)] = false;
            if (found) return true;
        }
        return false;
    };
    for (Vertex s = 0; s < n; ++s) {
        on[static_cast<std::size_t>(s)] = true;
        const bool found = dfs(s, s, 1);
        on[static_cast<std::size_t>(s)] = false;
        if (found) return true;
    }
    return false;
}

// Kernel by plain subset enumeration in lexicographic order of sorted member lists.
std::optional<std::vector<Vertex>> kernel_brute(const Orientation& j, const std::vector<Vertex>& within) {
    std::vector<std::vector<Vertex>> kernels;
    const auto s = within.size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << s); ++m) {
        std::vector<Vertex> in;
        for (std::size_t i = 0; i < s; ++i)
            if ((m >> i) & 1U) in.push_back(within[i]);
        bool ok = true;
        for (Vertex a : in)
            for (Vertex b : in) ok = ok && !j.has_arc(a, b);
        for (std::size_t i = 0; i < s && ok; ++i) {
            if ((m >> i) & 1U) continue;
            bool absorbed = false;
            for (Vertex b : in) absorbed = absorbed || j.has_arc(within[i], b);
            ok = absorbed;
        }
        if (ok) kernels.push_back(in);
    }
    if (kernels.empty()) return std::nullopt;
    return *std::min_element(kernels.begin(), kernels.end());
}

Orientation random_orientation(std::mt19937_64& rng, const Graph& g) {
    return Orientation::from_bits(std::make_shared<const Graph>(g), g.edge_count() == 0 ? 0 : rng() & ((std::uint64_t{1} << g.edge_count()) - 1));
}

}  // namespace

TEST_CASE("validate_good fixtures") {
    const auto single = orient(2, {{0, 1}});
    CHECK(std::holds_alternative<GoodDecompositionCertificate>(validate_good(single, layers_of(single, {{{0, 1}}}))));

    const auto c4 = orient(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(std::holds_alternative<GoodDecompositionCertificate>(validate_good(c4, layers_of(c4, {{{0, 1}, {1, 2}, {2, 3}, {3, 0}}}))));

    const auto tt = orient(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(std::holds_alternative<GoodDecompositionCertificate>(validate_good(tt, layers_of(tt, {{{0, 1}, {1, 2}}, {{0, 2}}}))));
    // Same arcs, outdegree of vertex 0 grows from layer 0 to 1.
    CHECK(invalid_kind(validate_good(tt, layers_of(tt, {{{1, 2}}, {{0, 1}}, {{0, 2}}}))) == InvalidReason::Kind::not_monotone);
    // Vertex 0 has two out-arcs in one layer.
    CHECK(invalid_kind(validate_good(tt, layers_of(tt, {{{0, 1}, {0, 2}}, {{1, 2}}}))) == InvalidReason::Kind::bad_component);

    const auto cyc = orient(3, {{0, 1}, {1, 2}, {2, 0}});
    const auto bad = validate_good(cyc, layers_of(cyc, {{{0, 1}, {1, 2}, {2, 0}}}));
    CHECK(invalid_kind(bad) == InvalidReason::Kind::odd_cycle);
    CHECK(std::get<InvalidReason>(bad).witness.size() == 3);

    CHECK(invalid_kind(validate_good(tt, layers_of(tt, {{{0, 1}}}))) == InvalidReason::Kind::malformed);
    CHECK(invalid_kind(validate_good(tt, layers_of(tt, {{{0, 1}, {1, 2}}, {{0, 2}, {0, 1}}}))) == InvalidReason::Kind::malformed);
    CHECK(invalid_kind(validate_good(tt, layers_of(tt, {{{0, 1}, {1, 2}}, {{0, 2}}, {}}))) == InvalidReason::Kind::malformed);
}

TEST_CASE("directed odd cycles against brute force") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const auto g = oracle::random_graph(rng, n, 0.5);
        const auto j = random_orientation(rng, g);
        const auto cycle = find_directed_odd_cycle(j);
        CHECK(cycle.has_value() == has_odd_cycle_brute(j));
        if (cycle) {
            CHECK(cycle->size() % 2 == 1);
            for (std::size_t i = 0; i < cycle->size(); ++i) CHECK(j.has_arc((*cycle)[i], (*cycle)[(i + 1) % cycle->size()]));
            auto sorted = *cycle;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        }
    }
}

TEST_CASE("search_good_decomposition small cases") {
    const auto one = search_good_decomposition(Graph::path(2));
    REQUIRE(one.status == DecompositionSearchResult::Status::found);
    CHECK(std::holds_alternative<GoodDecompositionCertificate>(validate_good(one.certificate->base, one.certificate->decomposition)));

    const auto k3 = search_good_decomposition(Graph::complete(3));
    REQUIRE(k3.status == DecompositionSearchResult::Status::found);
    CHECK(k3.certificate->decomposition.layers.size() == 2);
    CHECK_FALSE(find_directed_odd_cycle(k3.certificate->base).has_value());

    CHECK(search_good_decomposition(Graph(3)).status == DecompositionSearchResult::Status::found);

    Caps caps;
    caps.decomposition_edges = 2;
    CHECK_THROWS_AS(search_good_decomposition(Graph::complete(3), {}, caps), CapExceeded);
    DecompositionSearchOptions sampling;
    sampling.budget = 10000;
    CHECK(search_good_decomposition(Graph::complete(3), sampling, caps).status == DecompositionSearchResult::Status::found);
}

TEST_CASE("good decompositions for all labeled graphs on 5 vertices") {
    for (std::uint64_t code = 0; code < (1U << 10); ++code) {
        const auto g = oracle::graph_from_code(5, code);
        const auto r = search_good_decomposition(g);
        REQUIRE(r.status == DecompositionSearchResult::Status::found);
        CHECK(std::holds_alternative<GoodDecompositionCertificate>(validate_good(r.certificate->base, r.certificate->decomposition)));
    }
}

TEST_CASE("search is deterministic across job counts") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = oracle::random_graph(rng, 6, 0.5);
        if (g.edge_count() > 10) continue;
        DecompositionSearchOptions one, four;
        four.jobs = 4;
        const auto a = search_good_decomposition(g, one);
        const auto b = search_good_decomposition(g, four);
        REQUIRE(a.status == b.status);
        if (a.certificate) {
            CHECK(a.certificate->base == b.certificate->base);
            CHECK(a.certificate->decomposition == b.certificate->decomposition);
        }
    }
}

TEST_CASE("search budget") {
    DecompositionSearchOptions tiny;
    tiny.budget = 1;
    CHECK(search_good_decomposition(Graph::complete(4), tiny).status == DecompositionSearchResult::Status::exhausted_budget);
}

TEST_CASE("kernels") {
    const auto single = orient(2, {{0, 1}});
    CHECK(kernel_bruteforce(single, VertexSet::full(2)) == VertexSet::of(2, {1}));
    CHECK(kernel_bruteforce(orient(3, {}), VertexSet::full(3)) == VertexSet::full(3));
    const auto c4 = orient(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(kernel_bruteforce(c4, VertexSet::full(4)) == VertexSet::of(4, {0, 2}));
    CHECK_FALSE(kernel_bruteforce(orient(3, {{0, 1}, {1, 2}, {2, 0}}), VertexSet::full(3)).has_value());
    CHECK(kernel_bruteforce(c4, VertexSet::of(4, {1, 2})) == VertexSet::of(4, {2}));

    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        const auto j = random_orientation(rng, oracle::random_graph(rng, n, 0.5));
        const auto within = VertexSet::from_mask(n, rng() & ((1U << n) - 1));
        const auto k = kernel_bruteforce(j, within);
        const auto ref = kernel_brute(j, within.members());
        REQUIRE(k.has_value() == ref.has_value());
        if (k) CHECK(k->members() == *ref);
    }
    Caps caps;
    caps.kernel_vertices = 2;
    CHECK_THROWS_AS(kernel_bruteforce(orient(3, {}), VertexSet::full(3), caps), CapExceeded);
}

TEST_CASE("galvin orientation rule") {
    // X = {0}, Y = {1, 2}: two edges meeting in X.
    const BipartiteSplit meet_x(Graph(3, {{0, 1}, {0, 2}}), VertexSet::of(3, {1, 2}));
    const auto zx = galvin_orientation(meet_x, {1, 2});
    CHECK(zx.arcs() == std::vector<Arc>{{0, 1}});
    // X = {0, 1}, Y = {2}: two edges meeting in Y.
    const BipartiteSplit meet_y(Graph(3, {{0, 2}, {1, 2}}), VertexSet::of(3, {2}));
    const auto zy = galvin_orientation(meet_y, {1, 2});
    CHECK(zy.arcs() == std::vector<Arc>{{1, 0}});
    const BipartiteSplit lone(Graph(2, {{0, 1}}), VertexSet::of(2, {1}));
    CHECK(galvin_orientation(lone, {1}).arc_count() == 0);
    CHECK_THROWS_AS(galvin_orientation(meet_x, {1, 1}), ContractViolation);
}

TEST_CASE("galvin orientations are kernel-perfect on small bigraphs") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const int a = 1 + static_cast<int>(rng() % 3), b = 1 + static_cast<int>(rng() % 3);
        std::vector<Edge> es;
        for (int x = 0; x < a; ++x)
            for (int y = 0; y < b; ++y)
                if (rng() % 3 != 0) es.push_back({x, a + y});
        VertexSet ys(a + b);
        for (int y = 0; y < b; ++y) ys.insert(a + y);
        const BipartiteSplit u(Graph(a + b, es), ys);
        const auto colored = konig_color(u.cross_graph(), std::max(1, u.cross_graph().max_degree()));
        std::vector<int> phi;
        for (const auto& e : u.cross_edges())
            for (const auto& ce : colored.edges())
                if (ce.edge == e) phi.push_back(ce.color);
        const auto z = galvin_orientation(u, phi);
        const int ln = static_cast<int>(u.cross_edges().size());
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << ln); ++m) CHECK(kernel_bruteforce(z, VertexSet::from_mask(ln, m)).has_value());
    }
}

TEST_CASE("decomposition_to_saturating traces") {
    const auto k2 = Graph::path(2);
    const auto single = Orientation::from_arcs(k2, std::vector<Arc>{{0, 1}});
    const GoodDecompositionCertificate cert{single, {{{0}}}};
    const auto xi = decomposition_to_saturating(k2, cert, ListAssignment({{1}, {}}));
    CHECK(xi.colored_edges() == std::vector<ColoredEdge>{{{0, 1}, 1}});
    CHECK(decomposition_to_saturating(k2, cert, ListAssignment(2)).colored_edges().empty());

    const auto c4 = Graph::cycle(4);
    const auto dir = Orientation::from_arcs(c4, std::vector<Arc>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const GoodDecompositionCertificate cyc{dir, {{{0, 1, 2, 3}}}};
    const ListAssignment ones({{1}, {1}, {1}, {1}});
    const auto m = decomposition_to_saturating(c4, cyc, ones);
    CHECK(is_saturating(c4, ones, m));
    CHECK(m.colored_edges().size() == 2);

    CHECK_THROWS_AS(decomposition_to_saturating(k2, cert, ListAssignment({{}, {1}})), ContractViolation);
}

TEST_CASE("decomposition_to_saturating on random graphs and lists") {
    std::mt19937_64 rng(35);
    int ran = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto g = oracle::random_graph(rng, n, 0.5);
        if (g.edge_count() > 9) continue;
        const auto r = search_good_decomposition(g);
        REQUIRE(r.certificate.has_value());
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<std::vector<int>> lists;
            for (Vertex v = 0; v < n; ++v) {
                std::vector<int> colors{1, 2, 3, 4};
                std::shuffle(colors.begin(), colors.end(), rng);
                const int cap = std::min(4, r.certificate->base.outdegree(v));
                colors.resize(static_cast<std::size_t>(rng() % static_cast<unsigned>(cap + 1)));
                lists.push_back(colors);
            }
            const ListAssignment l(lists);
            const auto xi = decomposition_to_saturating(g, *r.certificate, l);
            CHECK(is_saturating(g, l, xi));
            if (g.edge_count() <= 12) CHECK(saturable_bruteforce(g, l).has_value());
            ++ran;
        }
    }
    CHECK(ran > 500);
}

TEST_CASE("certificate JSON round trip") {
    const auto r = search_good_decomposition(Graph::complete(4));
    REQUIRE(r.certificate.has_value());
    const auto text = certificate_to_json(*r.certificate);
    const auto back = certificate_from_json(text);
    CHECK(back.base == r.certificate->base);
    CHECK(back.decomposition == r.certificate->decomposition);
    const auto fixture = certificate_from_json(R"({"arcs": [[0,1],[1,2],[0,2]], "layers": [[0,1],[2]]})");
    CHECK(std::holds_alternative<GoodDecompositionCertificate>(validate_good(fixture.base, fixture.decomposition)));
    CHECK_THROWS_AS(certificate_from_json("{"), ParseError);
    CHECK_THROWS_AS(certificate_from_json(R"({"arcs": 3})"), ParseError);
}
