#include "koptlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>
#include <ostream>
#include <random>
#include <thread>

#include "koptlab/errors.hpp"
#include "koptlab/favaron.hpp"
#include "koptlab/kernel_decomp.hpp"
#include "koptlab/matching.hpp"
#include "koptlab/tuza.hpp"
#include "payload.hpp"

namespace koptlab {

using nlohmann::json;

namespace {

constexpr std::pair<Property, std::string_view> kNames[] = {
    {Property::favaron, "favaron"},
    {Property::theorem_main, "theorem-main"},
    {Property::lebensold, "lebensold"},
    {Property::tuza_join, "tuza-join"},
    {Property::tuza_special, "tuza-special"},
    {Property::sec1deg, "sec1deg"},
    {Property::decomp, "decomp"},
    {Property::chordal, "chordal"},
    {Property::galvin, "galvin"},
    {Property::chordal_saturate, "chordal-saturate"},
    {Property::domination, "domination"},
};

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

std::string graph_key(const Graph& g) {
    if (g.vertex_count() > 62) return {};
    return to_graph6(g);
}

// What a check hands back before timing and keys are attached.
struct Verdict {
    VerificationReport::Outcome outcome;
    json witness;
};

Verdict holds(json w) { return {VerificationReport::Outcome::holds, std::move(w)}; }
Verdict violated(json w) { return {VerificationReport::Outcome::violated, std::move(w)}; }
Verdict skipped(const std::string& reason) { return {VerificationReport::Outcome::skipped, json{{"reason", reason}}}; }

json colored_json(const std::vector<ColoredEdge>& es) {
    json out = json::array();
    for (const auto& ce : es) out.push_back({ce.edge.u, ce.edge.v, ce.color});
    return out;
}

// The sets a set-based property runs over: every k-optimal set, or the fixed one.
std::vector<VertexSet> optimal_sets(const Graph& g, int k, const CampaignOptions& options) {
    if (!options.fixed_set) return all_k_optimal_sets(g, k, options.caps);
    const auto& d = *options.fixed_set;
    if (d.universe() != g.vertex_count()) throw ContractViolation("--set does not fit the graph");
    if (!is_k_dependent(g, k, d) || phi_k(g, k, d) != phi_k_max(g, k, options.caps))
        throw ContractViolation("the given set is not k-optimal");
    return {d};
}

// Lists with |l(v)| <= cap[v] drawn from 1..palette.
ListAssignment random_lists(std::mt19937_64& rng, const std::vector<int>& cap, int palette) {
    std::vector<std::vector<int>> lists;
    for (int c : cap) {
        std::vector<int> all;
        for (int x = 1; x <= palette; ++x) all.push_back(x);
        std::shuffle(all.begin(), all.end(), rng);
        const int top = std::min(c, palette);
        const int size = top <= 0 ? 0 : static_cast<int>(rng() % static_cast<unsigned>(top + 1));
        lists.emplace_back(all.begin(), all.begin() + size);
    }
    return ListAssignment(lists);
}

int list_palette(const Orientation& j, const Caps& caps) {
    int top = 0;
    for (int d : j.outdegrees()) top = std::max(top, d);
    return std::max(1, std::min(static_cast<int>(caps.saturable_palette), top + 2));
}

std::vector<ListAssignment> lists_for(const Orientation& j, std::mt19937_64& rng, const CampaignOptions& options) {
    if (options.lists) {
        if (options.lists->vertex_count() != j.base().vertex_count()) throw ContractViolation("list assignment has the wrong vertex count");
        return {*options.lists};
    }
    if (options.full_lists) {
        std::vector<std::vector<int>> full;
        for (int d : j.outdegrees()) {
            full.emplace_back();
            for (int c = 1; c <= d; ++c) full.back().push_back(c);
        }
        return {ListAssignment(full)};
    }
    std::vector<ListAssignment> out;
    for (int i = 0; i < options.lists_per_graph; ++i) out.push_back(random_lists(rng, j.outdegrees(), list_palette(j, options.caps)));
    return out;
}

// Lists against a saturating coloring, plus the brute-force oracle when it fits.
std::optional<std::string> saturating_problem(const Graph& g, const ListAssignment& l, const PartialEdgeColoring& psi, const Caps& caps,
                                              int& oracle_checked) {
    if (!psi.is_proper()) return "coloring is not proper";
    if (!is_saturating(g, l, psi)) return "coloring is not saturating";
    try {
        if (!saturable_bruteforce(g, l, caps)) return "brute force finds the lists unsaturable";
        ++oracle_checked;
    } catch (const CapExceeded&) {
    }
    return std::nullopt;
}

// Independent check of a subgraph meant to give every vertex outside d degree exactly k.
std::optional<std::string> exact_degree_problem(const Graph& g, int k, const VertexSet& d, const KEdgeChromaticSubgraph& t) {
    if (!is_proper_coloring(g.vertex_count(), k, t.edges())) return "subgraph coloring is not proper";
    for (const auto& ce : t.edges())
        if (!g.adjacent(ce.edge.u, ce.edge.v)) return "subgraph uses a non-edge";
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!d.contains(v) && t.degree(v) != k) return "vertex " + std::to_string(v) + " has degree " + std::to_string(t.degree(v));
    return std::nullopt;
}

bool satisfy_from(const BipartiteSplit& split, int k, const std::vector<int>& demands, const std::vector<Vertex>& xs, std::size_t at,
                  std::vector<int>& load) {
    if (at == xs.size()) return true;
    const Vertex x = xs[at];
    const int need = demands[idx(x)];
    std::vector<Vertex> nbrs;
    for (Vertex w : split.base().neighbors(x).members())
        if (split.d_side().contains(w)) nbrs.push_back(w);
    if (static_cast<int>(nbrs.size()) < need) return false;
    // Choose `need` neighbors with spare capacity, in index order.
    std::vector<Vertex> chosen;
    std::function<bool(std::size_t)> pick = [&](std::size_t from) -> bool {
        if (static_cast<int>(chosen.size()) == need) return satisfy_from(split, k, demands, xs, at + 1, load);
        if (nbrs.size() - from < static_cast<std::size_t>(need) - chosen.size()) return false;
        for (std::size_t i = from; i < nbrs.size(); ++i) {
            const Vertex w = nbrs[i];
            if (load[idx(w)] >= k) continue;
            ++load[idx(w)];
            chosen.push_back(w);
            const bool ok = pick(i + 1);
            chosen.pop_back();
            --load[idx(w)];
            if (ok) return true;
        }
        return false;
    };
    return pick(0);
}

Verdict check_favaron(const Graph& g, int k, const CampaignOptions& o) {
    const auto opt = k_optimal_exhaustive(g, k, o.caps);
    json w{{"d", detail::set_json(opt.d)}, {"phi", opt.phi}};
    if (is_k_dominating(g, k, opt.d)) return holds(w);
    w["reason"] = "k-optimal set is not k-dominating";
    return violated(w);
}

Verdict check_theorem_main(const Graph& g, int k, const CampaignOptions& o) {
    std::uint64_t orientations = 0;
    const auto sets = optimal_sets(g, k, o);
    for (const auto& d : sets) {
        const auto x = d.complement();
        const auto gx = induced_subgraph(g, x);
        for (const auto& j : orient_all(gx.graph, o.caps)) {
            ++orientations;
            const auto m = verify_theorem_main(g, k, d, j);
            std::string problem;
            if (!is_proper_coloring(g.vertex_count(), k, m.edges())) problem = "coloring is not proper";
            for (const auto& ce : m.edges())
                if (!g.adjacent(ce.edge.u, ce.edge.v) || d.contains(ce.edge.u) == d.contains(ce.edge.v)) problem = "edge is not a cross edge";
            for (std::size_t i = 0; i < gx.to_parent.size() && problem.empty(); ++i)
                if (m.degree(gx.to_parent[i]) + j.outdegree(static_cast<Vertex>(i)) < k)
                    problem = "vertex " + std::to_string(gx.to_parent[i]) + " is short";
            if (!problem.empty()) {
                json arcs = json::array();
                for (const auto& a : j.arcs()) arcs.push_back({gx.to_parent[idx(a.tail)], gx.to_parent[idx(a.head)]});
                return violated({{"reason", problem}, {"d", detail::set_json(d)}, {"arcs", arcs}, {"m", colored_json(m.edges())}});
            }
        }
    }
    return holds({{"sets", sets.size()}, {"orientations", orientations}});
}

Verdict check_lebensold(const Graph& g, int k, std::mt19937_64& rng, const CampaignOptions&) {
    const auto side = bipartition(g);
    if (!side) return skipped("not bipartite");
    VertexSet d(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if ((*side)[idx(v)] == 0) d.insert(v);
    std::vector<int> demands(idx(g.vertex_count()), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!d.contains(v)) demands[idx(v)] = static_cast<int>(rng() % static_cast<unsigned>(k + 1));
    const BipartiteSplit split(g, d);
    const DemandProfile profile(k, demands);

    const auto engine = check_generalized_lebensold(split, profile);
    const auto classic = lebensold_classic(auxiliary_extension(split, profile), k);
    const bool brute = demands_satisfiable_bruteforce(split, k, demands);
    json w{{"d", detail::set_json(d)}, {"demands", demands}, {"engine", engine.feasible()}, {"classic", classic.feasible()}, {"brute", brute}};

    std::string problem;
    if (engine.feasible() != brute) problem = "flow verdict disagrees with brute force";
    else if (classic.feasible() != engine.feasible()) problem = "classic verdict on the extension disagrees";
    else if (engine.feasible()) {
        const auto& m = engine.subgraph();
        if (!is_proper_coloring(g.vertex_count(), k, m.edges())) problem = "subgraph coloring is not proper";
        for (const auto& ce : m.edges())
            if (!g.adjacent(ce.edge.u, ce.edge.v) || d.contains(ce.edge.u) == d.contains(ce.edge.v)) problem = "subgraph uses a non-cross edge";
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (!d.contains(v) && m.degree(v) < demands[idx(v)]) problem = "demand of " + std::to_string(v) + " is not met";
    } else {
        const auto& s = engine.violator().s;
        int need = 0;
        for (Vertex v : s.members()) need += demands[idx(v)];
        if (!s.is_subset_of(split.x_side()) || need <= lebensold_capacity(split, k, s)) problem = "violator is not deficient";
    }
    if (!problem.empty()) {
        w["reason"] = problem;
        return violated(w);
    }
    return holds(w);
}

Verdict check_tuza_join(const Graph& h, int k, const CampaignOptions& o) {
    if (!is_triangle_free(h)) return skipped("h has a triangle");
    const auto r = verify_tuza_connection(h, k, o.caps);
    json w{{"nu", r.nu}, {"tau", r.tau}, {"alpha_prime", r.alpha_prime}, {"phi", r.phi_max}, {"translations_ok", r.translations_ok}};
    if (r.nu_equality() && r.tau_equality() && r.translations_ok) return holds(w);
    w["reason"] = !r.nu_equality() ? "nu differs from alpha'_k" : !r.tau_equality() ? "tau differs from k|V|-phi" : "translations disagree";
    w["coloring"] = colored_json(r.coloring.edges());
    w["optimal_set"] = detail::set_json(r.optimal_set);
    return violated(w);
}

Verdict check_tuza_special(const Graph& h, int k, const CampaignOptions& o) {
    if (!is_triangle_free(h)) return skipped("h has a triangle");
    const auto g = join_independent(k, h);
    const auto nu = nu_exact(g, o.caps);
    const auto tau = tau_exact(g, o.caps);
    json w{{"nu", nu.size()}, {"tau", tau.size()}};
    if (tau.size() <= 2 * nu.size()) return holds(w);
    json tris = json::array();
    for (const auto& t : nu.triangles) tris.push_back(t);
    json cover = json::array();
    for (const auto& e : tau.edges) cover.push_back({e.u, e.v});
    w["reason"] = "tau exceeds 2 nu";
    w["packing"] = tris;
    w["cover"] = cover;
    return violated(w);
}

Verdict check_sec1deg(const Graph& g, int k, const CampaignOptions& o) {
    const auto sets = optimal_sets(g, k, o);
    int constructive = 0;
    int brute = 0;
    for (const auto& d : sets) {
        const auto x = d.complement();
        const auto gx = induced_subgraph(g, x);
        std::optional<KEdgeChromaticSubgraph> t;
        try {
            DecompositionSearchOptions so;
            so.budget = o.decomp_budget;
            so.seed = o.seed;
            const auto found = search_good_decomposition(gx.graph, so, o.caps);
            if (found.certificate) {
                const auto cert = *found.certificate;
                t = satur_pipeline(g, k, d, cert.base, [&](const Graph& h, const ListAssignment& l, const Orientation&) {
                    return decomposition_to_saturating(h, cert, l, o.caps);
                });
            }
        } catch (const CapExceeded&) {
        }
        if (t) {
            if (const auto problem = exact_degree_problem(g, k, d, *t))
                return violated({{"reason", *problem}, {"d", detail::set_json(d)}, {"m", colored_json(t->edges())}});
            ++constructive;
            continue;
        }
        // Exact route: l(x) = {1..k} on X, empty on D.
        std::vector<std::vector<int>> lists(idx(g.vertex_count()));
        for (Vertex v : x.members())
            for (int c = 1; c <= k; ++c) lists[idx(v)].push_back(c);
        const auto psi = saturable_bruteforce(g, ListAssignment(lists), o.caps);
        if (!psi) return violated({{"reason", "no k-edge-chromatic subgraph gives every vertex outside D degree k"}, {"d", detail::set_json(d)}});
        ++brute;
    }
    return holds({{"sets", sets.size()}, {"constructive", constructive}, {"bruteforce", brute}});
}

Verdict check_decomp(const Graph& g, const CampaignOptions& o) {
    DecompositionSearchOptions so;
    so.budget = o.decomp_budget;
    so.seed = o.seed;
    const auto r = search_good_decomposition(g, so, o.caps);
    using Status = DecompositionSearchResult::Status;
    if (r.status == Status::exhausted_budget) return skipped("search budget exhausted");
    if (r.status == Status::exhausted_full)
        return violated({{"reason", "no orientation has a good decomposition"}, {"orientations", r.orientations_tried}});
    const auto validity = validate_good(r.certificate->base, r.certificate->decomposition);
    if (const auto* bad = std::get_if<InvalidReason>(&validity))
        return violated({{"reason", "search returned an invalid certificate: " + bad->message},
                         {"certificate", json::parse(certificate_to_json(*r.certificate))}});
    return holds({{"certificate", json::parse(certificate_to_json(*r.certificate))}, {"orientations", r.orientations_tried}});
}

Verdict check_chordal(const Graph& g, int k, const CampaignOptions& o) {
    if (!chordal_order(g)) return skipped("not chordal");
    const auto sets = optimal_sets(g, k, o);
    for (const auto& d : sets) {
        const auto t = satur_pipeline_chordal(g, k, d);
        if (const auto problem = exact_degree_problem(g, k, d, t))
            return violated({{"reason", *problem}, {"d", detail::set_json(d)}, {"m", colored_json(t.edges())}});
    }
    return holds({{"sets", sets.size()}});
}

Verdict check_lists(const Graph& g, const Orientation& j, std::mt19937_64& rng, const CampaignOptions& o,
                    const std::function<PartialEdgeColoring(const ListAssignment&)>& solve, json extra) {
    int oracle = 0;
    const auto all = lists_for(j, rng, o);
    json last;
    for (const auto& l : all) {
        const auto psi = solve(l);
        last = colored_json(psi.colored_edges());
        if (const auto problem = saturating_problem(g, l, psi, o.caps, oracle)) {
            extra["reason"] = *problem;
            extra["lists"] = l.serialize();
            extra["coloring"] = colored_json(psi.colored_edges());
            return violated(extra);
        }
    }
    json w{{"lists", all.size()}, {"oracle_checked", oracle}};
    // A single assignment is usually an explicit request: keep the coloring.
    if (all.size() == 1) {
        w["assignment"] = all.front().serialize();
        w["coloring"] = last;
    }
    return holds(w);
}

Verdict check_galvin(const Graph& g, std::mt19937_64& rng, const CampaignOptions& o) {
    DecompositionSearchOptions so;
    so.budget = o.decomp_budget;
    so.seed = o.seed;
    const auto r = search_good_decomposition(g, so, o.caps);
    if (!r.certificate) return skipped("no good decomposition found");
    const auto cert = *r.certificate;
    return check_lists(g, cert.base, rng, o, [&](const ListAssignment& l) { return decomposition_to_saturating(g, cert, l, o.caps); },
                       {{"certificate", json::parse(certificate_to_json(cert))}});
}

Verdict check_chordal_saturate(const Graph& g, std::mt19937_64& rng, const CampaignOptions& o) {
    const auto ord = chordal_order(g);
    if (!ord) return skipped("not chordal");
    return check_lists(g, order_orientation(g, *ord), rng, o, [&](const ListAssignment& l) { return saturate_chordal(g, *ord, l); },
                       {{"order", ord->order}});
}

Verdict check_domination(const Graph& g, int k, const CampaignOptions& o) {
    const int gamma = gamma_k(g, k, o.caps);
    const int alpha = alpha_k(g, k, o.caps);
    json w{{"gamma_k", gamma}, {"alpha_k", alpha}};
    if (gamma <= alpha) return holds(w);
    w["reason"] = "gamma_k exceeds alpha_k";
    return violated(w);
}

Verdict dispatch(Property p, const Graph& g, int k, std::mt19937_64& rng, const CampaignOptions& o) {
    if (property_uses_k(p) && k < 1) throw ContractViolation("k must be positive");
    switch (p) {
        case Property::favaron: return check_favaron(g, k, o);
        case Property::theorem_main: return check_theorem_main(g, k, o);
        case Property::lebensold: return check_lebensold(g, k, rng, o);
        case Property::tuza_join: return check_tuza_join(g, k, o);
        case Property::tuza_special: return check_tuza_special(g, k, o);
        case Property::sec1deg: return check_sec1deg(g, k, o);
        case Property::decomp: return check_decomp(g, o);
        case Property::chordal: return check_chordal(g, k, o);
        case Property::galvin: return check_galvin(g, rng, o);
        case Property::chordal_saturate: return check_chordal_saturate(g, rng, o);
        case Property::domination: return check_domination(g, k, o);
    }
    throw ContractViolation("unknown property");
}

VerificationReport io_failure(Property p, const std::string& what) {
    VerificationReport r;
    r.property = std::string(property_name(p));
    r.outcome = VerificationReport::Outcome::skipped;
    r.witness = json{{"reason", "io: " + what}}.dump();
    return r;
}

}  // namespace

std::string_view property_name(Property p) {
    for (const auto& [q, name] : kNames)
        if (q == p) return name;
    return "unknown";
}

std::optional<Property> property_from_name(std::string_view name) {
    for (const auto& [q, n] : kNames)
        if (n == name) return q;
    return std::nullopt;
}

std::vector<Property> all_properties() {
    std::vector<Property> out;
    for (const auto& entry : kNames) out.push_back(entry.first);
    return out;
}

bool property_uses_k(Property p) { return p != Property::decomp && p != Property::galvin && p != Property::chordal_saturate; }

std::string_view outcome_name(VerificationReport::Outcome o) {
    switch (o) {
        case VerificationReport::Outcome::holds: return "holds";
        case VerificationReport::Outcome::violated: return "violated";
        case VerificationReport::Outcome::skipped: return "skipped";
    }
    return "unknown";
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["property"] = property;
    j["graph6"] = graph6;
    j["k"] = k;
    j["outcome"] = outcome_name(outcome);
    j["witness"] = nlohmann::ordered_json::parse(witness.empty() ? "null" : witness);
    j["ms"] = ms;
    return j.dump();
}

std::uint64_t instance_seed(std::uint64_t seed, std::string_view graph6, int k) {
    std::uint64_t h = 14695981039346656037ULL;
    auto mix = [&](unsigned char c) {
        h ^= c;
        h *= 1099511628211ULL;
    };
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
    for (char c : graph6) mix(static_cast<unsigned char>(c));
    mix(0);
    for (int i = 0; i < 4; ++i) mix(static_cast<unsigned char>(static_cast<unsigned>(k) >> (8 * i)));
    return h;
}

bool demands_satisfiable_bruteforce(const BipartiteSplit& split, int k, const std::vector<int>& demands) {
    const int n = split.base().vertex_count();
    if (static_cast<int>(demands.size()) != n) throw ContractViolation("demand vector has the wrong size");
    std::vector<int> clamped(idx(n), 0);
    for (Vertex v = 0; v < n; ++v) clamped[idx(v)] = std::clamp(demands[idx(v)], 0, k);
    std::vector<int> load(idx(n), 0);
    return satisfy_from(split, k, clamped, split.x_side().members(), 0, load);
}

VerificationReport check_instance(Property p, const Graph& g, int k, const CampaignOptions& options) {
    VerificationReport r;
    r.property = std::string(property_name(p));
    r.graph6 = graph_key(g);
    r.k = property_uses_k(p) ? k : 0;
    const auto seed = instance_seed(options.seed, r.graph6, r.k);
    std::mt19937_64 rng(seed);
    const auto start = std::chrono::steady_clock::now();
    Verdict v = skipped("not evaluated");
    try {
        v = dispatch(p, g, r.k, rng, options);
    } catch (const Counterexample& e) {
        json payload;
        try {
            payload = json::parse(e.payload());
        } catch (const json::exception&) {
            payload = e.payload();
        }
        v = violated({{"reason", e.what()}, {"payload", payload}});
    } catch (const CapExceeded& e) {
        v = skipped(std::string("cap: ") + e.what());
    } catch (const ContractViolation& e) {
        v = skipped(std::string("contract: ") + e.what());
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.outcome = v.outcome;
    if (v.outcome == VerificationReport::Outcome::violated) {
        v.witness["replay"] = {{"property", r.property}, {"graph6", r.graph6}, {"k", r.k}, {"seed", options.seed}};
        if (r.graph6.empty()) v.witness["graph"] = detail::graph_json(g);
    }
    r.witness = v.witness.dump();
    return r;
}

void ReportSink::write(const VerificationReport& r) {
    const std::lock_guard lock(mutex_);
    *out_ << r.to_json() << '\n';
    out_->flush();
}

CampaignSummary run_property(Property p, const GraphSource& source, const CampaignOptions& options,
                             const std::function<void(const VerificationReport&)>& on_report, ReportSink* counterexamples) {
    CampaignSummary summary;
    std::mutex source_mutex;
    std::mutex out_mutex;
    GraphStream stream(source);
    bool finished = false;
    const std::vector<int> ks = property_uses_k(p) ? options.k_range : std::vector<int>{0};

    auto emit = [&](const VerificationReport& r, bool io) {
        if (r.outcome == VerificationReport::Outcome::violated && counterexamples) counterexamples->write(r);
        const std::lock_guard lock(out_mutex);
        switch (r.outcome) {
            case VerificationReport::Outcome::holds: ++summary.holds; break;
            case VerificationReport::Outcome::violated: ++summary.violated; break;
            case VerificationReport::Outcome::skipped: ++summary.skipped; break;
        }
        if (io) ++summary.io_errors;
        if (on_report) on_report(r);
    };

    auto worker = [&] {
        for (;;) {
            std::optional<Graph> g;
            {
                const std::lock_guard lock(source_mutex);
                if (finished) return;
                try {
                    g = stream.next();
                    if (!g) finished = true;
                } catch (const std::exception& e) {
                    emit(io_failure(p, e.what()), true);
                    continue;
                }
            }
            if (!g) return;
            for (int k : ks) emit(check_instance(p, *g, k, options), false);
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return summary;
}

VerificationReport replay(std::string_view record_json, const CampaignOptions& options) {
    json j;
    try {
        j = json::parse(record_json);
    } catch (const json::exception& e) {
        throw ParseError(std::string("replay record is not JSON: ") + e.what(), 0);
    }
    const json* info = nullptr;
    if (j.contains("witness") && j["witness"].is_object() && j["witness"].contains("replay")) info = &j["witness"]["replay"];
    else if (j.contains("replay")) info = &j["replay"];
    else if (j.contains("property") && j.contains("graph6")) info = &j;
    if (!info) throw ParseError("replay record names no instance", 0);
    try {
        const auto p = property_from_name(info->at("property").get<std::string>());
        if (!p) throw ParseError("unknown property in replay record", 0);
        auto o = options;
        if (info->contains("seed")) o.seed = info->at("seed").get<std::uint64_t>();
        const auto g = parse_graph6(info->at("graph6").get<std::string>());
        return check_instance(*p, g, info->at("k").get<int>(), o);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad replay record: ") + e.what(), 0);
    }
}

}  // namespace koptlab
