#include "koptlab/sources.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "koptlab/errors.hpp"
#include "koptlab/saturation.hpp"

namespace koptlab {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

std::vector<Edge> relabel(const std::vector<Edge>& es, const std::vector<int>& perm) {
    std::vector<Edge> out;
    out.reserve(es.size());
    for (const auto& e : es) out.push_back(Edge::make(perm[idx(e.u)], perm[idx(e.v)]));
    return out;
}

// Canonical color classes after refinement, plus the per-round histograms.
struct Refinement {
    std::vector<int> color;
    std::string signature;
};

Refinement refine(const Graph& g) {
    const int n = g.vertex_count();
    Refinement r;
    r.color.assign(idx(n), 0);
    for (Vertex v = 0; v < n; ++v) r.color[idx(v)] = g.degree(v);
    std::ostringstream sig;
    sig << n << ':' << g.edge_count();
    int classes = -1;
    for (int round = 0; round <= n; ++round) {
        std::vector<std::pair<std::vector<int>, Vertex>> keyed;
        for (Vertex v = 0; v < n; ++v) {
            std::vector<int> key{r.color[idx(v)]};
            std::vector<int> around;
            for (Vertex w : g.neighbors(v).members()) around.push_back(r.color[idx(w)]);
            std::sort(around.begin(), around.end());
            key.insert(key.end(), around.begin(), around.end());
            keyed.emplace_back(std::move(key), v);
        }
        std::sort(keyed.begin(), keyed.end());
        int next = -1;
        std::vector<int> fresh(idx(n));
        for (std::size_t i = 0; i < keyed.size(); ++i) {
            if (i == 0 || keyed[i].first != keyed[i - 1].first) {
                ++next;
                sig << '|';
                for (int x : keyed[i].first) sig << x << ',';
            }
            fresh[idx(keyed[i].second)] = next;
        }
        r.color = std::move(fresh);
        if (next + 1 == classes) break;
        classes = next + 1;
        sig << '/';
    }
    r.signature = sig.str();
    return r;
}

bool extend_mapping(const Graph& a, const Graph& b, const std::vector<int>& ca, const std::vector<int>& cb, std::vector<int>& map,
                    std::vector<bool>& used, int v) {
    const int n = a.vertex_count();
    if (v == n) return true;
    for (Vertex w = 0; w < n; ++w) {
        if (used[idx(w)] || ca[idx(v)] != cb[idx(w)]) continue;
        bool ok = true;
        for (Vertex u = 0; u < v && ok; ++u) ok = a.adjacent(u, v) == b.adjacent(map[idx(u)], w);
        if (!ok) continue;
        map[idx(v)] = w;
        used[idx(w)] = true;
        if (extend_mapping(a, b, ca, cb, map, used, v + 1)) return true;
        used[idx(w)] = false;
    }
    return false;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

GraphSource GraphSource::graph6_file(std::string path) {
    GraphSource s;
    s.kind = Kind::graph6_file;
    s.path = std::move(path);
    return s;
}

GraphSource GraphSource::edge_list_file(std::string path) {
    GraphSource s;
    s.kind = Kind::edge_list_file;
    s.path = std::move(path);
    return s;
}

GraphSource GraphSource::exhaustive(int n) {
    if (n < 1 || n > 8) throw ContractViolation("exhaustive source needs 1 <= n <= 8");
    GraphSource s;
    s.kind = Kind::exhaustive;
    s.n = n;
    return s;
}

GraphSource GraphSource::random(int n, double p, std::uint64_t seed, int count) {
    if (n < 1 || p < 0.0 || p > 1.0 || count < 0) throw ContractViolation("random source needs n >= 1, 0 <= p <= 1, count >= 0");
    GraphSource s;
    s.kind = Kind::random;
    s.n = n;
    s.p = p;
    s.seed = seed;
    s.count = count;
    return s;
}

GraphSource GraphSource::random_chordal(int n, std::uint64_t seed, int count) {
    if (n < 1 || count < 0) throw ContractViolation("random-chordal source needs n >= 1, count >= 0");
    GraphSource s;
    s.kind = Kind::random_chordal;
    s.n = n;
    s.seed = seed;
    s.count = count;
    return s;
}

GraphSource GraphSource::random_triangle_free(int n, double p, std::uint64_t seed, int count) {
    auto s = random(n, p, seed, count);
    s.kind = Kind::random_triangle_free;
    return s;
}

GraphSource GraphSource::connected_by_edges(int max_edges) {
    if (max_edges < 1 || max_edges > 12) throw ContractViolation("connected_by_edges needs 1 <= m <= 12");
    GraphSource s;
    s.kind = Kind::connected_by_edges;
    s.n = max_edges;
    return s;
}

GraphSource GraphSource::single(Graph g) {
    GraphSource s;
    s.kind = Kind::single;
    s.graph = std::move(g);
    return s;
}

struct GraphStream::State {
    GraphSource source;
    bool loaded = false;
    bool done = false;
    // files
    std::string text;
    std::size_t offset = 0;
    // exhaustive
    int n = 1;
    std::uint64_t code = 0;
    // random
    std::mt19937_64 rng;
    int produced = 0;
    // connected_by_edges
    int m = 0;
    std::vector<Graph> batch;
    std::size_t batch_pos = 0;
};

GraphStream::GraphStream(const GraphSource& source) : state_(std::make_unique<State>()) {
    state_->source = source;
    state_->rng.seed(source.seed);
}

GraphStream::~GraphStream() = default;
GraphStream::GraphStream(GraphStream&&) noexcept = default;
GraphStream& GraphStream::operator=(GraphStream&&) noexcept = default;

std::optional<Graph> GraphStream::next() {
    auto& s = *state_;
    if (s.done) return std::nullopt;
    const auto& src = s.source;
    using Kind = GraphSource::Kind;
    switch (src.kind) {
        case Kind::single:
            s.done = true;
            return src.graph;
        case Kind::graph6_file: {
            if (!s.loaded) {
                s.loaded = true;
                try {
                    s.text = read_file(src.path);
                } catch (...) {
                    s.done = true;
                    throw;
                }
            }
            while (s.offset < s.text.size()) {
                auto end = s.text.find('\n', s.offset);
                if (end == std::string::npos) end = s.text.size();
                std::string line = s.text.substr(s.offset, end - s.offset);
                const auto at = s.offset;
                s.offset = end + 1;
                while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
                if (line.rfind(">>graph6<<", 0) == 0) line.erase(0, 10);
                if (line.empty()) continue;
                try {
                    return parse_graph6(line);
                } catch (const ParseError& e) {
                    throw ParseError(src.path + ": " + e.what(), at);
                }
            }
            s.done = true;
            return std::nullopt;
        }
        case Kind::edge_list_file: {
            if (!s.loaded) {
                s.loaded = true;
                try {
                    s.text = read_file(src.path);
                } catch (...) {
                    s.done = true;
                    throw;
                }
            }
            // Several "n m" blocks may follow each other.
            std::istringstream in(s.text.substr(s.offset));
            int n = 0;
            long long m = 0;
            if (!(in >> n)) {
                if (!in.eof()) {
                    s.done = true;
                    throw ParseError(src.path + ": expected vertex count", s.offset);
                }
                s.done = true;
                return std::nullopt;
            }
            if (!(in >> m) || n < 0 || m < 0) {
                s.done = true;
                throw ParseError(src.path + ": bad edge-list header", s.offset);
            }
            std::ostringstream block;
            block << n << ' ' << m << '\n';
            for (long long i = 0; i < m; ++i) {
                long long a = 0;
                long long b = 0;
                if (!(in >> a >> b)) {
                    s.done = true;
                    throw ParseError(src.path + ": truncated edge list", s.offset);
                }
                block << a << ' ' << b << '\n';
            }
            const auto consumed = in.eof() ? s.text.size() - s.offset : static_cast<std::size_t>(in.tellg());
            const auto at = s.offset;
            s.offset += consumed;
            try {
                return parse_edge_list(block.str());
            } catch (const ParseError& e) {
                s.done = true;
                throw ParseError(src.path + ": " + e.what(), at);
            } catch (const ContractViolation& e) {
                s.done = true;
                throw ParseError(src.path + ": " + e.what(), at);
            }
        }
        case Kind::exhaustive: {
            const auto pairs = static_cast<unsigned>(s.n * (s.n - 1) / 2);
            if (s.code >= (std::uint64_t{1} << pairs)) {
                if (s.n == src.n) {
                    s.done = true;
                    return std::nullopt;
                }
                ++s.n;
                s.code = 0;
            }
            std::vector<Edge> es;
            int bit = 0;
            for (int i = 0; i < s.n; ++i)
                for (int j = i + 1; j < s.n; ++j, ++bit)
                    if ((s.code >> bit) & 1U) es.push_back({i, j});
            ++s.code;
            return Graph(s.n, std::move(es));
        }
        case Kind::random:
        case Kind::random_chordal:
        case Kind::random_triangle_free: {
            if (s.produced == src.count) {
                s.done = true;
                return std::nullopt;
            }
            ++s.produced;
            const auto sub = s.rng();
            if (src.kind == Kind::random_chordal) return random_chordal(src.n, sub);
            if (src.kind == Kind::random_triangle_free) return random_triangle_free(src.n, src.p, sub);
            std::mt19937_64 local(sub);
            std::bernoulli_distribution coin(src.p);
            std::vector<Edge> es;
            for (int i = 0; i < src.n; ++i)
                for (int j = i + 1; j < src.n; ++j)
                    if (coin(local)) es.push_back({i, j});
            return Graph(src.n, std::move(es));
        }
        case Kind::connected_by_edges: {
            while (s.batch_pos == s.batch.size()) {
                if (s.m == src.n) {
                    s.done = true;
                    return std::nullopt;
                }
                ++s.m;
                s.batch = connected_graphs_with_edges(s.m);
                s.batch_pos = 0;
            }
            return s.batch[s.batch_pos++];
        }
    }
    return std::nullopt;
}

Graph random_chordal(int n, std::uint64_t seed) {
    if (n < 1) throw ContractViolation("random_chordal needs n >= 1");
    std::mt19937_64 rng(seed);
    Graph g(n);
    std::vector<Edge> es;
    std::vector<VertexSet> adj(idx(n), VertexSet(n));
    for (Vertex v = 1; v < n; ++v) {
        // Occasionally start a new component.
        if (rng() % 6 == 0) continue;
        const auto anchor = static_cast<Vertex>(rng() % static_cast<unsigned>(v));
        std::vector<Vertex> clique{anchor};
        for (Vertex w : adj[idx(anchor)].members()) {
            if (rng() % 2 == 0) continue;
            bool all = true;
            for (Vertex c : clique) all = all && adj[idx(c)].contains(w);
            if (all) clique.push_back(w);
        }
        for (Vertex c : clique) {
            adj[idx(c)].insert(v);
            adj[idx(v)].insert(c);
            es.push_back(Edge::make(c, v));
        }
    }
    std::vector<int> perm(idx(n));
    for (int i = 0; i < n; ++i) perm[idx(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    g = Graph(n, relabel(es, perm));
    if (!chordal_order(g)) throw ContractViolation("random_chordal produced a non-chordal graph");
    return g;
}

Graph random_triangle_free(int n, double p, std::uint64_t seed) {
    if (n < 1) throw ContractViolation("random_triangle_free needs n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Edge> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::bernoulli_distribution coin(p);
    std::vector<VertexSet> adj(idx(n), VertexSet(n));
    std::vector<Edge> es;
    for (const auto& e : pairs) {
        if (!coin(rng)) continue;
        if ((adj[idx(e.u)] & adj[idx(e.v)]).size() > 0) continue;
        adj[idx(e.u)].insert(e.v);
        adj[idx(e.v)].insert(e.u);
        es.push_back(e);
    }
    return Graph(n, std::move(es));
}

std::string refinement_signature(const Graph& g) { return refine(g).signature; }

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    const auto ra = refine(a);
    const auto rb = refine(b);
    if (ra.signature != rb.signature) return false;
    std::vector<int> map(idx(a.vertex_count()), -1);
    std::vector<bool> used(idx(a.vertex_count()), false);
    return extend_mapping(a, b, ra.color, rb.color, map, used, 0);
}

std::vector<Graph> connected_graphs_with_edges(int m) {
    if (m < 1) throw ContractViolation("connected_graphs_with_edges needs m >= 1");
    std::vector<Graph> level{Graph::path(2)};
    for (int e = 2; e <= m; ++e) {
        std::map<std::string, std::vector<Graph>> buckets;
        std::vector<Graph> next;
        auto offer = [&](Graph h) {
            auto& bucket = buckets[refinement_signature(h)];
            for (const auto& seen : bucket)
                if (isomorphic(seen, h)) return;
            bucket.push_back(h);
            next.push_back(std::move(h));
        };
        for (const auto& g : level) {
            const int n = g.vertex_count();
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (g.adjacent(i, j)) continue;
                    auto es = g.edges();
                    es.push_back({i, j});
                    offer(Graph(n, std::move(es)));
                }
            for (int i = 0; i < n; ++i) {
                auto es = g.edges();
                es.push_back({i, n});
                offer(Graph(n + 1, std::move(es)));
            }
        }
        level = std::move(next);
    }
    return level;
}

}  // namespace koptlab
