#include <doctest.h>

#include <random>

#include "koptlab/errors.hpp"
#include "koptlab/matching.hpp"
#include "oracles.hpp"

using namespace koptlab;

namespace {

struct RandomInstance {
    BipartiteSplit split;
    DemandProfile profile;
};

RandomInstance random_instance(std::mt19937_64& rng) {
    const int n = 2 + static_cast<int>(rng() % 9);  // 2..10 vertices
    const int k = 1 + static_cast<int>(rng() % 3);
    const auto d_mask = rng() & ((std::uint64_t{1} << n) - 1);
    const auto g = oracle::random_graph(rng, n, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0);
    std::vector<int> demands(static_cast<std::size_t>(n));
    for (auto& d : demands) d = static_cast<int>(rng() % static_cast<std::uint64_t>(k + 1));
    return {BipartiteSplit(g, VertexSet::from_mask(n, d_mask)), DemandProfile(k, demands)};
}

void check_certificate(const BipartiteSplit& split, const DemandProfile& profile, const LebensoldOutcome& out) {
    if (out.feasible()) {
        const auto& m = out.subgraph();
        CHECK(is_proper_coloring(split.base().vertex_count(), profile.k(), m.edges()));
        for (const auto& ce : m.edges()) CHECK(split.d_side().contains(ce.edge.u) != split.d_side().contains(ce.edge.v));
        for (Vertex x : split.x_side().members()) CHECK(m.degree(x) >= profile.demand(x));
        for (Vertex v = 0; v < split.base().vertex_count(); ++v) CHECK(m.degree(v) <= profile.k());
    } else {
        const auto& viol = out.violator();
        CHECK(viol.s.is_subset_of(split.x_side()));
        int demand = 0;
        for (Vertex x : viol.s.members()) demand += profile.demand(x);
        CHECK(lebensold_capacity(split, profile.k(), viol.s) < demand);
        CHECK(viol.deficiency == demand - lebensold_capacity(split, profile.k(), viol.s));
        CHECK(out.flow_value + viol.deficiency == out.total_demand);
    }
}

}  // namespace

TEST_CASE("demands are clamped into [0, k]") {
    const DemandProfile p(2, {-1, 0, 5});
    CHECK(p.demands() == std::vector<int>{0, 0, 2});
}

TEST_CASE("K22 with k = 2 and full demands decomposes into two perfect matchings") {
    const BipartiteSplit split(Graph::complete_bipartite(2, 2), VertexSet::of(4, {2, 3}));
    const auto out = check_generalized_lebensold(split, DemandProfile::uniform(2, 4));
    REQUIRE(out.feasible());
    CHECK(out.subgraph().size() == 4);
    CHECK(out.subgraph().color_class(1).size() == 2);
    CHECK(out.subgraph().color_class(2).size() == 2);
}

TEST_CASE("star with one D vertex and two leaves at demand 2 is infeasible") {
    const BipartiteSplit split(Graph::star(2), VertexSet::of(3, {0}));
    const auto out = check_generalized_lebensold(split, DemandProfile::uniform(2, 3));
    REQUIRE_FALSE(out.feasible());
    CHECK(out.violator().s.members() == std::vector<Vertex>{1, 2});
    CHECK(out.violator().deficiency == 2);
}

TEST_CASE("zero demands are always feasible with an empty subgraph") {
    const BipartiteSplit split(Graph::complete(5), VertexSet::of(5, {0, 1}));
    const auto out = check_generalized_lebensold(split, DemandProfile(3, std::vector<int>(5, 0)));
    REQUIRE(out.feasible());
    CHECK(out.subgraph().size() == 0);
}

TEST_CASE("classic Lebensold cases") {
    const auto k33 = Graph::complete_bipartite(3, 3);
    const auto full = lebensold_classic(BipartiteSplit(k33, VertexSet::of(6, {3, 4, 5})), 3);
    REQUIRE(full.feasible());
    CHECK(full.subgraph().size() == 9);

    const auto pendant = lebensold_classic(BipartiteSplit(Graph::path(2), VertexSet::of(2, {0})), 2);
    REQUIRE_FALSE(pendant.feasible());
    CHECK(pendant.violator().s.members() == std::vector<Vertex>{1});

    CHECK(lebensold_classic(BipartiteSplit(Graph::path(3), VertexSet::full(3)), 2).feasible());
}

TEST_CASE("konig coloring") {
    const auto pm = konig_color(Graph(4, {{0, 1}, {2, 3}}), 1);
    for (const auto& ce : pm.edges()) CHECK(ce.color == 1);
    const auto c4 = konig_color(Graph::cycle(4), 2);
    CHECK(c4.size() == 4);
    CHECK(c4.color_class(1).size() == 2);

    const auto c6k2 = disjoint_union(Graph::cycle(6), Graph::complete(2));
    const auto col = konig_color(c6k2, 2);
    CHECK(col.size() == 7);
    CHECK(is_proper_coloring(8, 2, col.edges()));

    CHECK_THROWS_AS(konig_color(Graph::cycle(5), 3), ContractViolation);
    CHECK_THROWS_AS(konig_color(Graph::star(3), 2), ContractViolation);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int a = 1 + static_cast<int>(rng() % 6);
        const int b = 1 + static_cast<int>(rng() % 6);
        std::vector<Edge> es;
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j)
                if (rng() % 2) es.push_back({i, a + j});
        const Graph g(a + b, es);
        const auto colored = konig_color(g, g.max_degree());
        CHECK(colored.size() == g.edge_count());
    }
}

TEST_CASE("auxiliary extension adds k - d_i pendants") {
    const BipartiteSplit split(Graph::complete_bipartite(2, 2), VertexSet::of(4, {2, 3}));
    const auto same = auxiliary_extension(split, DemandProfile::uniform(2, 4));
    CHECK(same.base().vertex_count() == 4);
    CHECK(same.cross_edges() == split.cross_edges());

    const BipartiteSplit single(Graph(1), VertexSet(1));
    const auto two = auxiliary_extension(single, DemandProfile(2, {0}));
    CHECK(two.base().vertex_count() == 3);
    CHECK(two.base().degree(0) == 2);
    CHECK(two.d_side().members() == std::vector<Vertex>{1, 2});

    const auto ext = auxiliary_extension(split, DemandProfile(2, {2, 1, 0, 0}));
    CHECK(ext.base().vertex_count() == 5);
    CHECK(ext.base().adjacent(1, 4));
    CHECK(lebensold_classic(ext, 2).feasible() == check_generalized_lebensold(split, DemandProfile(2, {2, 1, 0, 0})).feasible());
}

TEST_CASE("verdicts agree with brute force and with the auxiliary extension") {
    std::mt19937_64 rng(2024);
    int feasible = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto inst = random_instance(rng);
        const auto out = check_generalized_lebensold(inst.split, inst.profile);
        check_certificate(inst.split, inst.profile, out);

        const int n = inst.split.base().vertex_count();
        std::vector<bool> is_x(static_cast<std::size_t>(n));
        for (Vertex x : inst.split.x_side().members()) is_x[static_cast<std::size_t>(x)] = true;
        std::vector<int> demand(static_cast<std::size_t>(n), 0);
        for (Vertex x : inst.split.x_side().members()) demand[static_cast<std::size_t>(x)] = inst.profile.demand(x);
        const bool brute = oracle::demanded_subgraph_exists(n, inst.split.cross_edges(), is_x, demand, inst.profile.k());
        CHECK(out.feasible() == brute);

        const auto ext = auxiliary_extension(inst.split, inst.profile);
        CHECK(lebensold_classic(ext, inst.profile.k()).feasible() == out.feasible());
        feasible += out.feasible() ? 1 : 0;
    }
    CHECK(feasible > 40);
    CHECK(feasible < 360);
}

TEST_CASE("maximum matching on general graphs") {
    CHECK(maximum_matching(Graph::cycle(5)).size() == 2);
    CHECK(maximum_matching(Graph::complete(6)).size() == 3);
    CHECK(maximum_matching(Graph::star(4)).size() == 1);
    // blossom: triangle with pendant paths
    const Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 4}, {1, 5}});
    CHECK(maximum_matching(g).size() == 3);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 150; ++trial) {
        const auto g2 = oracle::random_graph(rng, 1 + static_cast<int>(rng() % 9), 0.4);
        const auto m = maximum_matching(g2);
        CHECK(static_cast<int>(m.size()) == oracle::alpha_prime_brute(g2, 1));
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i + 1; j < m.size(); ++j) CHECK_FALSE(m[i].meets(m[j]));
    }
}
