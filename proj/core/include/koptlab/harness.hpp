#pragma once

// Verification campaigns: run one property over a graph source and a k range,
// one report per (graph, k), violations mirrored to a counterexample sink.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koptlab/caps.hpp"
#include "koptlab/graph.hpp"
#include "koptlab/saturation.hpp"
#include "koptlab/sources.hpp"

namespace koptlab {

enum class Property {
    favaron,           // exhaustive k-optimal set is k-dominating
    theorem_main,      // every k-optimal set x every orientation of G[X]
    lebensold,         // flow verdict vs classic-on-extension vs brute force (bipartite only)
    tuza_join,         // nu(I_k v h) = alpha'_k(h), tau(I_k v h) = k|V| - phi_k(h)
    tuza_special,      // tau(I_k v h) <= 2 nu(I_k v h)
    sec1deg,           // k-edge-chromatic subgraph with every vertex outside D at degree k
    decomp,            // a good decomposition exists
    chordal,           // chordal pipeline, every k-optimal set
    galvin,            // decomposition_to_saturating on random lists
    chordal_saturate,  // saturate_chordal on random lists
    domination,        // gamma_k <= alpha_k
};

std::string_view property_name(Property p);
std::optional<Property> property_from_name(std::string_view name);
std::vector<Property> all_properties();
/// False for properties reported once per graph with k = 0.
bool property_uses_k(Property p);

struct VerificationReport {
    enum class Outcome { holds, violated, skipped };

    std::string property;
    std::string graph6;  // empty when the instance could not be read
    int k = 0;
    Outcome outcome = Outcome::holds;
    std::string witness = "null";  // JSON text; skipped records carry {"reason": ...}
    double ms = 0.0;

    /// {"property","graph6","k","outcome","witness","ms"} on one line.
    std::string to_json() const;
};

std::string_view outcome_name(VerificationReport::Outcome o);

struct CampaignOptions {
    std::vector<int> k_range{1};
    int jobs = 1;
    std::uint64_t seed = 1;       // per-instance streams derive from (seed, graph6, k)
    Caps caps = default_caps();
    int lists_per_graph = 1;      // galvin, chordal-saturate
    std::uint64_t decomp_budget = 0;
    std::optional<ListAssignment> lists;  // fixed lists instead of random ones
    bool full_lists = false;              // l(v) = {1..outdegree(v)} instead of random ones
    std::optional<VertexSet> fixed_set;   // restricts set-based properties to this D
};

/// Evaluates one instance. Never throws for solver-side failures: Counterexample
/// becomes violated, ContractViolation / CapExceeded become skipped.
VerificationReport check_instance(Property p, const Graph& g, int k, const CampaignOptions& options);

/// Serializes writes; flushes after every record.
class ReportSink {
public:
    explicit ReportSink(std::ostream& out) : out_(&out) {}
    void write(const VerificationReport& r);

private:
    std::ostream* out_;
    std::mutex mutex_;
};

struct CampaignSummary {
    std::uint64_t holds = 0;
    std::uint64_t violated = 0;
    std::uint64_t skipped = 0;
    std::uint64_t io_errors = 0;  // unreadable instances (also counted as skipped)

    std::uint64_t total() const { return holds + violated + skipped; }
};

/// Worker pool over instances. `on_report` is called under a lock; with jobs = 1
/// the order is the source order times k_range.
CampaignSummary run_property(Property p, const GraphSource& source, const CampaignOptions& options,
                             const std::function<void(const VerificationReport&)>& on_report = {},
                             ReportSink* counterexamples = nullptr);

/// Re-evaluates the instance named in a violated record (its JSON line or its
/// witness object) with the recorded seed.
VerificationReport replay(std::string_view record_json, const CampaignOptions& options = {});

/// FNV-1a over (seed, graph6, k).
std::uint64_t instance_seed(std::uint64_t seed, std::string_view graph6, int k);

/// Exact b-matching style check used as the lebensold oracle: is there a subgraph of
/// the cross edges with degree <= k on D and >= demand on X.
bool demands_satisfiable_bruteforce(const BipartiteSplit& split, int k, const std::vector<int>& demands);

}  // namespace koptlab
