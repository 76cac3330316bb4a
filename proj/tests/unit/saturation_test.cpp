#include <doctest.h>

#include <random>

#include "koptlab/errors.hpp"
#include "koptlab/favaron.hpp"
#include "koptlab/saturation.hpp"
#include "oracles.hpp"

using namespace koptlab;

namespace {

// Each new vertex attaches to a clique inside the closed neighborhood of a random earlier vertex.
Graph random_chordal(std::mt19937_64& rng, int n) {
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    std::vector<Edge> es;
    for (int v = 1; v < n; ++v) {
        if (rng() % 5 == 0) continue;
        const int u = static_cast<int>(rng() % static_cast<unsigned>(v));
        std::vector<int> clique{u};
        for (int w = 0; w < v; ++w) {
            if (w == u || !adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] || rng() % 2 == 0) continue;
            bool all = true;
            for (int c : clique) all = all && adj[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)];
            if (all) clique.push_back(w);
        }
        for (int c : clique) {
            adj[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)] = adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] = true;
            es.push_back(Edge::make(c, v));
        }
    }
    // Shuffle labels so the insertion order is not the vertex order.
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& e : es) e = Edge::make(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]);
    return Graph(n, es);
}

// Lists with |l(v)| <= cap[v], colors from 1..palette.
ListAssignment random_lists(std::mt19937_64& rng, const std::vector<int>& cap, int palette) {
    std::vector<std::vector<int>> lists;
    for (int c : cap) {
        std::vector<int> all;
        for (int x = 1; x <= palette; ++x) all.push_back(x);
        std::shuffle(all.begin(), all.end(), rng);
        const int size = std::min(c, palette) == 0 ? 0 : static_cast<int>(rng() % static_cast<unsigned>(std::min(c, palette) + 1));
        lists.emplace_back(all.begin(), all.begin() + size);
    }
    return ListAssignment(lists);
}

bool is_chordal_brute(const Graph& g) {
    // No induced cycle of length >= 4: check every vertex subset of size >= 4 inducing a cycle.
    const int n = g.vertex_count();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        if (std::popcount(m) < 4) continue;
        bool two_regular = true;
        for (int v = 0; v < n && two_regular; ++v) {
            if (!((m >> v) & 1U)) continue;
            int deg = 0;
            for (int w = 0; w < n; ++w)
                if (((m >> w) & 1U) && g.adjacent(v, w)) ++deg;
            two_regular = deg == 2;
        }
        if (!two_regular) continue;
        if (is_connected(induced_subgraph(g, VertexSet::from_mask(n, m)).graph)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("list assignment serialization") {
    const ListAssignment l({{3, 1, 1}, {}, {2}});
    CHECK(l.of(0) == std::vector<int>{1, 3});
    CHECK(l.serialize() == "0: 1 3\n1:\n2: 2\n");
    CHECK(ListAssignment::parse(l.serialize(), 3) == l);
    CHECK(ListAssignment::parse("2: 5 4\n", 3) == ListAssignment({{}, {}, {4, 5}}));
    CHECK_THROWS_AS(ListAssignment::parse("7: 1\n", 3), ParseError);
    CHECK_THROWS_AS(ListAssignment::parse("0 1\n", 3), ParseError);
    CHECK_THROWS_AS(ListAssignment::parse("0: x\n", 3), ParseError);
    CHECK_THROWS_AS(ListAssignment(std::vector<std::vector<int>>{{0}}), ContractViolation);
}

TEST_CASE("is_saturating") {
    const auto k2 = Graph::path(2);
    PartialEdgeColoring empty(k2);
    CHECK(is_saturating(k2, ListAssignment(2), empty));
    PartialEdgeColoring one(k2);
    one.assign(0, 1, 1);
    CHECK(is_saturating(k2, ListAssignment({{1}, {}}), one));
    CHECK_FALSE(is_saturating(k2, ListAssignment({{1, 2}, {}}), one));
    CHECK_THROWS_AS(one.assign(0, 1, 0), ContractViolation);

    PartialEdgeColoring p3(Graph::path(3));
    p3.assign(0, 1, 1);
    CHECK_THROWS_AS(p3.assign(1, 2, 1), ContractViolation);
}

TEST_CASE("saturable_bruteforce fixed cases") {
    const auto k3 = Graph::complete(3);
    CHECK(saturable_bruteforce(k3, ListAssignment(3)).has_value());
    const ListAssignment l({{}, {1}, {1, 2}});
    const auto psi = saturable_bruteforce(k3, l);
    REQUIRE(psi.has_value());
    CHECK(is_saturating(k3, l, *psi));
    CHECK_FALSE(saturable_bruteforce(Graph::path(2), ListAssignment({{1, 2}, {}})).has_value());

    Caps caps;
    caps.saturable_palette = 1;
    CHECK_THROWS_AS(saturable_bruteforce(k3, l, caps), CapExceeded);
    caps = Caps{};
    caps.saturable_edges = 2;
    CHECK_THROWS_AS(saturable_bruteforce(k3, l, caps), CapExceeded);
}

TEST_CASE("chordal_order") {
    CHECK(chordal_order(Graph::complete(5)).has_value());
    CHECK_FALSE(chordal_order(Graph::cycle(4)).has_value());
    CHECK(chordal_order(Graph::star(4)).has_value());
    CHECK(chordal_order(Graph::path(6)).has_value());
    CHECK_FALSE(chordal_order(Graph::cycle(6)).has_value());

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 9);
        const auto g = (trial % 2 == 0) ? random_chordal(rng, n) : oracle::random_graph(rng, n, 0.5);
        const auto ord = chordal_order(g);
        CHECK(ord.has_value() == is_chordal_brute(g));
        if (ord) CHECK(ord->is_simplicial(g));
    }
}

TEST_CASE("order_orientation") {
    const auto k2 = Graph::path(2);
    CHECK(order_orientation(k2, EliminationOrder::from({0, 1})).arcs() == std::vector<Arc>{{1, 0}});
    const auto p3 = order_orientation(Graph::path(3), EliminationOrder::from({0, 2, 1}));
    CHECK(p3.has_arc(1, 0));
    CHECK(p3.has_arc(1, 2));
    CHECK(p3.outdegrees() == std::vector<int>{0, 2, 0});
    CHECK(order_orientation(Graph::complete(3), EliminationOrder::from({0, 1, 2})).outdegrees() == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(EliminationOrder::from({0, 0, 1}), ContractViolation);
}

TEST_CASE("saturate_chordal traces") {
    const auto k3 = Graph::complete(3);
    const auto psi = saturate_chordal(k3, EliminationOrder::from({0, 1, 2}), ListAssignment({{}, {1}, {1, 2}}));
    CHECK(psi.colored_edges() == std::vector<ColoredEdge>{{{0, 2}, 2}, {{1, 2}, 1}});

    const auto star = Graph::star(3);  // center 0, leaves first
    const auto s = saturate_chordal(star, EliminationOrder::from({1, 2, 3, 0}), ListAssignment({{1, 2, 3}, {}, {}, {}}));
    CHECK(s.colored_edges().size() == 3);
    CHECK(is_saturating(star, ListAssignment({{1, 2, 3}, {}, {}, {}}), s));

    CHECK(saturate_chordal(k3, EliminationOrder::from({0, 1, 2}), ListAssignment(3)).colored_edges().empty());
    CHECK_THROWS_AS(saturate_chordal(k3, EliminationOrder::from({0, 1, 2}), ListAssignment({{1}, {}, {}})), ContractViolation);
    CHECK_THROWS_AS(saturate_chordal(Graph::cycle(4), EliminationOrder::from({0, 1, 2, 3}), ListAssignment(4)), ContractViolation);
}

TEST_CASE("saturate_chordal agrees with brute force on small chordal graphs") {
    std::mt19937_64 rng(22);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const auto g = random_chordal(rng, n);
        if (g.edge_count() > 12) continue;
        const auto ord = chordal_order(g);
        REQUIRE(ord.has_value());
        const auto j = order_orientation(g, *ord);
        // The i-th later neighbor of each vertex has at least i earlier neighbors.
        for (Vertex v = 0; v < n; ++v) {
            std::vector<int> later;
            for (Vertex w : g.neighbors(v).members())
                if (ord->position[static_cast<std::size_t>(w)] > ord->position[static_cast<std::size_t>(v)]) later.push_back(ord->position[static_cast<std::size_t>(w)]);
            std::sort(later.begin(), later.end());
            for (std::size_t i = 0; i < later.size(); ++i) CHECK(j.outdegree(ord->order[static_cast<std::size_t>(later[i])]) >= static_cast<int>(i) + 1);
        }
        const auto l = random_lists(rng, j.outdegrees(), 5);
        const auto psi = saturate_chordal(g, *ord, l);
        CHECK(is_saturating(g, l, psi));
        CHECK(saturable_bruteforce(g, l).has_value());
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("satur_pipeline on chordal graphs") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const int k = 1 + static_cast<int>(rng() % 3);
        const auto g = random_chordal(rng, n);
        const auto opt = k_optimal_exhaustive(g, k);
        const auto t = satur_pipeline_chordal(g, k, opt.d);
        CHECK(is_proper_coloring(n, k, t.edges()));
        for (Vertex v = 0; v < n; ++v)
            if (!opt.d.contains(v)) CHECK(t.degree(v) == k);
        for (const auto& ce : t.edges()) CHECK_FALSE((opt.d.contains(ce.edge.u) && opt.d.contains(ce.edge.v)));
    }
}

TEST_CASE("satur_pipeline fixed cases") {
    // X edgeless: the result is the all-k saturating subgraph itself.
    const auto star = Graph::star(3);
    const auto d = VertexSet::of(4, {1, 2, 3});
    const auto t = satur_pipeline_chordal(star, 2, d);
    CHECK(t.degree(0) == 2);

    // k = 1 gives a matching saturating X, like the independent-set route.
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = random_chordal(rng, 7);
        const auto opt = k_optimal_exhaustive(g, 1);
        const auto m = satur_pipeline_chordal(g, 1, opt.d);
        const auto ref = saturating_matching_complement(g, opt.d);
        for (Vertex v = 0; v < 7; ++v) {
            if (opt.d.contains(v)) continue;
            CHECK(m.degree(v) == 1);
            CHECK(std::count_if(ref.begin(), ref.end(), [&](const Edge& e) { return e.touches(v); }) == 1);
        }
    }

    CHECK_THROWS_AS(satur_pipeline_chordal(Graph::cycle(4), 1, VertexSet(4)), ContractViolation);
}
