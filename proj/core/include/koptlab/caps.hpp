#pragma once

#include <cstddef>

namespace koptlab {

/// Size ceilings for the exponential solvers. Exceeding one raises CapExceeded.
struct Caps {
    std::size_t subset_vertices = 20;      // k_optimal_exhaustive, gamma_k, alpha_k
    std::size_t orientation_edges = 20;    // orient_all
    std::size_t triangles = 200;           // nu_exact, tau_exact
    std::size_t alpha_prime_edges = 24;    // alpha_k_prime exact search
    std::size_t saturable_edges = 12;      // saturable_bruteforce
    std::size_t saturable_palette = 6;
    std::size_t decomposition_edges = 10;  // search_good_decomposition, exhaustive mode
    std::size_t kernel_vertices = 20;      // kernel_bruteforce

    /// Returns a copy with every edge ceiling replaced by `edges`.
    Caps with_edge_cap(std::size_t edges) const;
};

/// Defaults, with the edge ceilings overridden by KOPTLAB_CAP_EDGES when set.
/// Read once per process.
const Caps& default_caps();

/// Ceilings large enough to never trigger at desk scale (`--cap-override`).
Caps unlimited_caps();

}  // namespace koptlab
