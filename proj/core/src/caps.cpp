#include "koptlab/caps.hpp"

#include <cstdlib>
#include <limits>
#include <string>

namespace koptlab {

Caps Caps::with_edge_cap(std::size_t edges) const {
    Caps c = *this;
    c.orientation_edges = edges;
    c.alpha_prime_edges = edges;
    c.saturable_edges = edges;
    c.decomposition_edges = edges;
    return c;
}

const Caps& default_caps() {
    static const Caps caps = [] {
        Caps c;
        if (const char* env = std::getenv("KOPTLAB_CAP_EDGES")) {
            try {
                const auto value = std::stoul(env);
                if (value > 0) c = c.with_edge_cap(value);
            } catch (const std::exception&) {
                // unparsable override: keep the defaults
            }
        }
        return c;
    }();
    return caps;
}

Caps unlimited_caps() {
    Caps c;
    c.subset_vertices = 62;
    c.orientation_edges = 63;
    c.triangles = std::numeric_limits<std::size_t>::max();
    c.alpha_prime_edges = std::numeric_limits<std::size_t>::max();
    c.saturable_edges = std::numeric_limits<std::size_t>::max();
    c.saturable_palette = std::numeric_limits<std::size_t>::max();
    c.decomposition_edges = 63;
    c.kernel_vertices = 62;
    return c;
}

}  // namespace koptlab
