// koptlab command-line front end: exact quantities, verification campaigns,
// counterexample searches and saturating colorings.

#include <CLI11.hpp>
#include <cctype>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <regex>
#include <sstream>

#include "koptlab/errors.hpp"
#include "koptlab/favaron.hpp"
#include "koptlab/harness.hpp"
#include "koptlab/kernel_decomp.hpp"
#include "koptlab/tuza.hpp"

using namespace koptlab;
using nlohmann::json;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SourceFlags {
    std::string graph_file;
    std::string graph6;
    int exhaustive = 0;
    std::vector<std::string> random;
    std::vector<std::string> random_chordal;
    int connected = 0;
};

struct Flags {
    SourceFlags source;
    std::vector<int> ks{1};
    std::string set;
    std::string out;
    std::string counterexamples = "counterexamples.jsonl";
    std::string lists_file;
    int jobs = 1;
    std::uint64_t seed = 1;
    std::uint64_t budget = 0;
    int lists_per_graph = 1;
    bool cap_override = false;
};

void add_source_flags(CLI::App* cmd, Flags& f) {
    auto* g = cmd->add_option("--graph", f.source.graph_file, "graph6 or edge-list file (\"n m\" header)");
    auto* s = cmd->add_option("--graph6", f.source.graph6, "single graph6 string");
    auto* e = cmd->add_option("--exhaustive", f.source.exhaustive, "every labeled graph on 1..N vertices (N <= 8)");
    auto* r = cmd->add_option("--random", f.source.random, "N P SEED COUNT")->expected(4);
    auto* c = cmd->add_option("--random-chordal", f.source.random_chordal, "N SEED COUNT")->expected(3);
    auto* m = cmd->add_option("--connected", f.source.connected, "connected graphs with at most M edges, up to isomorphism");
    for (auto* a : {g, s, e, r, c, m})
        for (auto* b : {g, s, e, r, c, m})
            if (a != b) a->excludes(b);
    cmd->add_option("-k", f.ks, "k values, comma separated")->delimiter(',');
    cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "campaign seed for random lists and demands");
    cmd->add_flag("--cap-override", f.cap_override, "lift every exact-solver ceiling (may run for a very long time)");
}

template <typename T>
T number(const std::string& text, const char* what) {
    std::istringstream in(text);
    T value{};
    if (!(in >> value) || !in.eof()) throw UsageError(std::string("bad ") + what + ": " + text);
    return value;
}

bool looks_like_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    static const std::regex header(R"(\s*\d+\s+\d+\s*)");
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return std::regex_match(line, header);
    }
    return false;
}

GraphSource make_source(const SourceFlags& s) {
    if (!s.graph_file.empty())
        return looks_like_edge_list(s.graph_file) ? GraphSource::edge_list_file(s.graph_file) : GraphSource::graph6_file(s.graph_file);
    if (!s.graph6.empty()) return GraphSource::single(parse_graph6(s.graph6));
    if (s.exhaustive > 0) return GraphSource::exhaustive(s.exhaustive);
    if (!s.random.empty())
        return GraphSource::random(number<int>(s.random[0], "N"), number<double>(s.random[1], "P"), number<std::uint64_t>(s.random[2], "SEED"),
                                   number<int>(s.random[3], "COUNT"));
    if (!s.random_chordal.empty())
        return GraphSource::random_chordal(number<int>(s.random_chordal[0], "N"), number<std::uint64_t>(s.random_chordal[1], "SEED"),
                                           number<int>(s.random_chordal[2], "COUNT"));
    if (s.connected > 0) return GraphSource::connected_by_edges(s.connected);
    throw UsageError("no graph source: use --graph, --graph6, --exhaustive, --random, --random-chordal or --connected");
}

bool single_instance(const SourceFlags& s) {
    if (!s.graph6.empty()) return true;
    if (s.graph_file.empty()) return false;
    GraphStream stream(make_source(s));
    return stream.next() && !stream.next();
}

// "a,c" or "0,2".
VertexSet parse_set(const std::string& text, int n) {
    VertexSet d(n);
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(' '));
        tok.erase(tok.find_last_not_of(' ') + 1);
        int v = -1;
        if (tok.size() == 1 && std::islower(static_cast<unsigned char>(tok[0]))) v = tok[0] - 'a';
        else if (!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos) v = std::stoi(tok);
        if (v < 0 || v >= n) throw UsageError("bad --set member: " + tok);
        d.insert(v);
    }
    return d;
}

Caps caps_for(const Flags& f) { return f.cap_override ? unlimited_caps() : default_caps(); }

std::string set_text(const VertexSet& d) {
    std::string out = "{";
    for (Vertex v : d.members()) out += (out.size() > 1 ? "," : "") + std::to_string(v);
    return out + "}";
}

int run_compute(const std::string& what, const Flags& f) {
    static const std::vector<std::string> k_free{"nu", "tau"};
    const bool uses_k = std::find(k_free.begin(), k_free.end(), what) == k_free.end();
    const auto caps = caps_for(f);
    const bool bare = single_instance(f.source) && (!uses_k || f.ks.size() == 1);
    std::ofstream file;
    if (!f.out.empty()) {
        file.open(f.out);
        if (!file) throw std::runtime_error("cannot write " + f.out);
    }
    std::ostream& out = f.out.empty() ? std::cout : file;

    GraphStream stream(make_source(f.source));
    while (auto g = stream.next()) {
        for (int k : uses_k ? f.ks : std::vector<int>{0}) {
            if (uses_k && k < 1) throw UsageError("k must be positive");
            std::string value;
            if (what == "phi") {
                value = std::to_string(f.set.empty() ? phi_k_max(*g, k, caps) : phi_k(*g, k, parse_set(f.set, g->vertex_count())));
            } else if (what == "nu") {
                value = std::to_string(nu_exact(*g, caps).size());
            } else if (what == "tau") {
                value = std::to_string(tau_exact(*g, caps).size());
            } else if (what == "alpha-k-prime") {
                value = std::to_string(alpha_k_prime(*g, k, caps).size());
            } else if (what == "gamma-k") {
                value = std::to_string(gamma_k(*g, k, caps));
            } else if (what == "alpha-k") {
                value = std::to_string(alpha_k(*g, k, caps));
            } else {
                const auto opt = k_optimal_exhaustive(*g, k, caps);
                value = set_text(opt.d) + " phi=" + std::to_string(opt.phi);
            }
            if (bare) out << value << '\n';
            else out << to_graph6(*g) << (uses_k ? " k=" + std::to_string(k) : "") << ' ' << value << '\n';
        }
    }
    return kExitHolds;
}

int run_campaign(Property p, const Flags& f, bool decompose = false) {
    CampaignOptions o;
    o.k_range = f.ks;
    o.jobs = f.jobs;
    o.seed = f.seed;
    o.caps = caps_for(f);
    o.decomp_budget = f.budget;
    o.lists_per_graph = f.lists_per_graph;
    // decompose defaults to l(v) = {1..d+(v)}, the full saturation problem.
    o.full_lists = decompose && f.lists_file.empty();

    std::ofstream file;
    if (!f.out.empty()) {
        file.open(f.out);
        if (!file) throw std::runtime_error("cannot write " + f.out);
    }
    std::ostream& out = f.out.empty() ? std::cout : file;
    std::ofstream cex_file;
    std::unique_ptr<ReportSink> cex;

    const auto source = make_source(f.source);
    if (!f.set.empty() || !f.lists_file.empty()) {
        // Fixed sets and lists only make sense for one graph.
        GraphStream probe(source);
        const auto g = probe.next();
        if (!g || probe.next()) throw UsageError("--set and --lists need a single graph");
        if (!f.set.empty()) o.fixed_set = parse_set(f.set, g->vertex_count());
        if (!f.lists_file.empty()) {
            std::ifstream in(f.lists_file);
            if (!in) throw std::runtime_error("cannot open " + f.lists_file);
            std::stringstream buf;
            buf << in.rdbuf();
            o.lists = ListAssignment::parse(buf.str(), g->vertex_count());
        }
    }

    const auto summary = run_property(p, source, o, [&](const VerificationReport& r) {
        out << r.to_json() << '\n';
        out.flush();
        if (r.outcome == VerificationReport::Outcome::violated) {
            if (!cex) {
                cex_file.open(f.counterexamples, std::ios::app);
                if (!cex_file) std::cerr << "koptlab: cannot write " << f.counterexamples << '\n';
                cex = std::make_unique<ReportSink>(cex_file);
            }
            cex->write(r);
        }
    });
    std::cerr << property_name(p) << ": " << summary.holds << " holds, " << summary.violated << " violated, " << summary.skipped << " skipped";
    if (summary.io_errors) std::cerr << " (" << summary.io_errors << " unreadable)";
    std::cerr << '\n';
    if (summary.violated > 0) return kExitViolations;
    return summary.io_errors > 0 ? kExitUsage : kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-optimal sets, triangle packing and saturating edge colorings"};
    app.require_subcommand(1);
    Flags f;

    std::string compute_what;
    auto* compute = app.add_subcommand("compute", "print an exact quantity per instance");
    compute->add_option("quantity", compute_what)->required()->check(CLI::IsMember({"phi", "nu", "tau", "alpha-k-prime", "gamma-k", "alpha-k", "k-optimal"}));
    add_source_flags(compute, f);
    compute->add_option("--set", f.set, "vertex set for phi, letters (a,c) or indices (0,2)");
    compute->add_option("--out", f.out, "write values here instead of stdout");

    std::vector<std::string> property_names;
    for (auto p : all_properties()) property_names.emplace_back(property_name(p));
    std::string verify_what;
    auto* verify = app.add_subcommand("verify", "run a property over every instance, JSONL report");
    verify->add_option("property", verify_what)->required()->check(CLI::IsMember(property_names));

    std::string search_what;
    auto* search = app.add_subcommand("search", "look for counterexamples to a conjecture");
    search->add_option("conjecture", search_what)->required()->check(CLI::IsMember({"tuza-special", "sec1deg", "decomp"}));

    std::string decompose_what;
    auto* decompose = app.add_subcommand("decompose", "saturating colorings from elimination orders or good decompositions");
    decompose->add_option("method", decompose_what)->required()->check(CLI::IsMember({"chordal-saturate", "galvin"}));
    decompose->add_option("--lists", f.lists_file, "list assignment file, one \"v: c1 c2\" line per vertex");

    for (auto* cmd : {verify, search, decompose}) {
        add_source_flags(cmd, f);
        cmd->add_option("--out", f.out, "JSONL report file (default stdout)");
        cmd->add_option("--counterexamples", f.counterexamples, "violations are appended here")->capture_default_str();
        cmd->add_option("--budget", f.budget, "node budget for the decomposition search (0 = none)");
        cmd->add_option("--lists-per-graph", f.lists_per_graph, "random list assignments per graph")->check(CLI::PositiveNumber);
    }
    verify->add_option("--set", f.set, "fixed k-optimal set for set-based properties");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitHolds : kExitUsage;
    }

    try {
        if (compute->parsed()) return run_compute(compute_what, f);
        if (verify->parsed()) return run_campaign(*property_from_name(verify_what), f);
        if (search->parsed()) return run_campaign(*property_from_name(search_what), f);
        return run_campaign(*property_from_name(decompose_what), f, true);
    } catch (const UsageError& e) {
        std::cerr << "koptlab: " << e.what() << '\n';
    } catch (const ParseError& e) {
        std::cerr << "koptlab: " << e.what() << '\n';
    } catch (const CapExceeded& e) {
        std::cerr << "koptlab: " << e.what() << " (use --cap-override or KOPTLAB_CAP_EDGES)\n";
    } catch (const ContractViolation& e) {
        std::cerr << "koptlab: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "koptlab: " << e.what() << '\n';
    }
    return kExitUsage;
}
