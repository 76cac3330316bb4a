#include "koptlab/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <queue>
#include <sstream>

#include "koptlab/errors.hpp"

namespace koptlab {

namespace {

constexpr int kWordBits = 64;

std::size_t word_count(int universe) { return static_cast<std::size_t>((universe + kWordBits - 1) / kWordBits); }

}  // namespace

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(int universe) : universe_(universe), words_(word_count(universe), 0) {
    if (universe < 0) throw ContractViolation("negative universe size");
}

VertexSet VertexSet::full(int universe) {
    VertexSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
}

VertexSet VertexSet::of(int universe, std::initializer_list<Vertex> members) {
    return from_members(universe, std::span<const Vertex>(members.begin(), members.size()));
}

VertexSet VertexSet::from_members(int universe, std::span<const Vertex> members) {
    VertexSet s(universe);
    for (Vertex v : members) s.insert(v);
    return s;
}

VertexSet VertexSet::from_mask(int universe, std::uint64_t mask) {
    if (universe > kWordBits) throw ContractViolation("from_mask needs universe <= 64");
    VertexSet s(universe);
    if (!s.words_.empty()) s.words_[0] = mask;
    s.trim();
    if (s.words_.empty() ? mask != 0 : s.words_[0] != mask) throw ContractViolation("mask has bits outside the universe");
    return s;
}

void VertexSet::check(Vertex v) const {
    if (v < 0 || v >= universe_) {
        throw ContractViolation("vertex " + std::to_string(v) + " outside 0.." + std::to_string(universe_ - 1));
    }
}

void VertexSet::trim() {
    const int rem = universe_ % kWordBits;
    if (rem != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

bool VertexSet::contains(Vertex v) const {
    if (v < 0 || v >= universe_) return false;
    return (words_[static_cast<std::size_t>(v / kWordBits)] >> (v % kWordBits)) & 1U;
}

void VertexSet::insert(Vertex v) {
    check(v);
    words_[static_cast<std::size_t>(v / kWordBits)] |= std::uint64_t{1} << (v % kWordBits);
}

void VertexSet::erase(Vertex v) {
    check(v);
    words_[static_cast<std::size_t>(v / kWordBits)] &= ~(std::uint64_t{1} << (v % kWordBits));
}

int VertexSet::size() const {
    int total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
}

bool VertexSet::empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        auto w = words_[i];
        while (w != 0) {
            const int bit = std::countr_zero(w);
            out.push_back(static_cast<Vertex>(i * kWordBits + static_cast<std::size_t>(bit)));
            w &= w - 1;
        }
    }
    return out;
}

std::uint64_t VertexSet::mask() const {
    if (universe_ > kWordBits) throw ContractViolation("mask() needs universe <= 64");
    return words_.empty() ? 0 : words_[0];
}

VertexSet VertexSet::complement() const {
    VertexSet s = *this;
    for (auto& w : s.words_) w = ~w;
    s.trim();
    return s;
}

int VertexSet::count_common(const VertexSet& other) const {
    int total = 0;
    const auto n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) total += std::popcount(words_[i] & other.words_[i]);
    return total;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        const auto o = i < other.words_.size() ? other.words_[i] : 0;
        if ((words_[i] & ~o) != 0) return false;
    }
    return true;
}

VertexSet& VertexSet::operator|=(const VertexSet& o) {
    if (o.universe_ != universe_) throw ContractViolation("vertex set universes differ");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& o) {
    if (o.universe_ != universe_) throw ContractViolation("vertex set universes differ");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& o) {
    if (o.universe_ != universe_) throw ContractViolation("vertex set universes differ");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
}

bool VertexSet::lex_less(const VertexSet& a, const VertexSet& b) {
    const auto ma = a.members();
    const auto mb = b.members();
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

// ---------------------------------------------------------------- Graph

Graph::Graph(int n) : Graph(n, {}) {}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw ContractViolation("negative vertex count");
    for (auto& e : edges_) {
        if (e.u == e.v) throw ContractViolation("loop at vertex " + std::to_string(e.u));
        e = Edge::make(e.u, e.v);
        if (e.u < 0 || e.v >= n) {
            throw ContractViolation("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " out of range");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
        throw ContractViolation("parallel edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v));
    }
    adj_.assign(static_cast<std::size_t>(n), VertexSet(n));
    for (const auto& e : edges_) {
        adj_[static_cast<std::size_t>(e.u)].insert(e.v);
        adj_[static_cast<std::size_t>(e.v)].insert(e.u);
    }
}

Graph Graph::complete(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.push_back({i, j});
    return Graph(n, std::move(es));
}

Graph Graph::cycle(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.push_back(Edge::make(i, (i + 1) % n));
    return Graph(n, std::move(es));
}

Graph Graph::path(int n) {
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
    return Graph(n, std::move(es));
}

Graph Graph::star(int leaves) {
    std::vector<Edge> es;
    for (int i = 1; i <= leaves; ++i) es.push_back({0, i});
    return Graph(leaves + 1, std::move(es));
}

Graph Graph::complete_bipartite(int a, int b) {
    std::vector<Edge> es;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) es.push_back({i, a + j});
    return Graph(a + b, std::move(es));
}

bool Graph::adjacent(Vertex a, Vertex b) const {
    if (a < 0 || a >= n_) return false;
    return adj_[static_cast<std::size_t>(a)].contains(b);
}

int Graph::max_degree() const {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

std::optional<std::size_t> Graph::edge_index(Vertex a, Vertex b) const {
    if (a == b) return std::nullopt;
    const auto e = Edge::make(a, b);
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

std::size_t Graph::edge_index_or_throw(Vertex a, Vertex b) const {
    const auto idx = edge_index(a, b);
    if (!idx) throw ContractViolation("no edge " + std::to_string(a) + "-" + std::to_string(b));
    return *idx;
}

std::vector<std::size_t> Graph::incident_edges(Vertex v) const {
    std::vector<std::size_t> out;
    for (Vertex w : neighbors(v).members()) out.push_back(*edge_index(v, w));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- constructions

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    if (s.universe() != g.vertex_count()) throw ContractViolation("vertex set universe does not match graph");
    InducedSubgraph out;
    out.to_parent = s.members();
    std::vector<int> to_child(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < out.to_parent.size(); ++i) to_child[static_cast<std::size_t>(out.to_parent[i])] = static_cast<int>(i);
    std::vector<Edge> es;
    for (const auto& e : g.edges()) {
        const int a = to_child[static_cast<std::size_t>(e.u)];
        const int b = to_child[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0) es.push_back(Edge::make(a, b));
    }
    out.graph = Graph(static_cast<int>(out.to_parent.size()), std::move(es));
    return out;
}

Graph join_independent(int k, const Graph& h) {
    if (k < 1) throw ContractViolation("join_independent needs k >= 1");
    std::vector<Edge> es;
    for (const auto& e : h.edges()) es.push_back({e.u + k, e.v + k});
    for (int a = 0; a < k; ++a)
        for (int w = 0; w < h.vertex_count(); ++w) es.push_back({a, w + k});
    return Graph(k + h.vertex_count(), std::move(es));
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> es = a.edges();
    const int shift = a.vertex_count();
    for (const auto& e : b.edges()) es.push_back({e.u + shift, e.v + shift});
    return Graph(a.vertex_count() + b.vertex_count(), std::move(es));
}

std::vector<std::array<Vertex, 3>> triangles(const Graph& g) {
    std::vector<std::array<Vertex, 3>> out;
    for (const auto& e : g.edges()) {
        const auto common = g.neighbors(e.u) & g.neighbors(e.v);
        for (Vertex w : common.members())
            if (w > e.v) out.push_back({e.u, e.v, w});
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_triangle_free(const Graph& g) {
    for (const auto& e : g.edges())
        if (g.neighbors(e.u).count_common(g.neighbors(e.v)) > 0) return false;
    return true;
}

std::optional<std::vector<int>> bipartition(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<int> side(n, -1);
    for (std::size_t s = 0; s < n; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::queue<Vertex> q;
        q.push(static_cast<Vertex>(s));
        while (!q.empty()) {
            const Vertex v = q.front();
            q.pop();
            for (Vertex w : g.neighbors(v).members()) {
                auto& sw = side[static_cast<std::size_t>(w)];
                if (sw == -1) {
                    sw = 1 - side[static_cast<std::size_t>(v)];
                    q.push(w);
                } else if (sw == side[static_cast<std::size_t>(v)]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

bool is_connected(const Graph& g) {
    if (g.vertex_count() <= 1) return true;
    VertexSet seen(g.vertex_count());
    std::vector<Vertex> stack{0};
    seen.insert(0);
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : (g.neighbors(v) - seen).members()) {
            seen.insert(w);
            stack.push_back(w);
        }
    }
    return seen.size() == g.vertex_count();
}

// ---------------------------------------------------------------- graph6

Graph parse_graph6(std::string_view text) {
    if (text.empty()) throw ParseError("graph6: empty input", 0);
    const auto header = static_cast<unsigned char>(text[0]);
    if (header == 126) throw ParseError("graph6: long form (n > 62) is not supported", 0);
    if (header < 63 || header > 126) throw ParseError("graph6: invalid size byte", 0);
    const int n = header - 63;
    const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
    const std::size_t bytes = (bits + 5) / 6;
    if (text.size() < 1 + bytes) throw ParseError("graph6: truncated bit vector", text.size());
    if (text.size() > 1 + bytes) throw ParseError("graph6: trailing data", 1 + bytes);

    std::vector<Edge> es;
    std::size_t bit = 0;
    for (std::size_t b = 0; b < bytes; ++b) {
        const auto ch = static_cast<unsigned char>(text[1 + b]);
        if (ch < 63 || ch > 126) throw ParseError("graph6: byte outside 63..126", 1 + b);
        const int value = ch - 63;
        for (int i = 5; i >= 0; --i, ++bit) {
            const bool set = (value >> i) & 1;
            if (bit >= bits) {
                if (set) throw ParseError("graph6: nonzero padding bit", 1 + b);
                continue;
            }
            if (!set) continue;
            // column-major upper triangle: bit index -> (row, col) with row < col
            int col = 1;
            std::size_t start = 0;
            while (start + static_cast<std::size_t>(col) <= bit) {
                start += static_cast<std::size_t>(col);
                ++col;
            }
            es.push_back({static_cast<int>(bit - start), col});
        }
    }
    return Graph(n, std::move(es));
}

std::string to_graph6(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 62) throw ContractViolation("graph6 short form needs n <= 62");
    std::string out(1, static_cast<char>(n + 63));
    int acc = 0;
    int filled = 0;
    for (int col = 1; col < n; ++col) {
        for (int row = 0; row < col; ++row) {
            acc = (acc << 1) | (g.adjacent(row, col) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
    return out;
}

// ---------------------------------------------------------------- edge list

namespace {

struct Tokenizer {
    std::string_view text;
    std::size_t pos = 0;

    std::optional<std::pair<long, std::size_t>> next_int() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r' || text[pos] == '\n'))
            ++pos;
        if (pos >= text.size()) return std::nullopt;
        const std::size_t at = pos;
        long value = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc()) throw ParseError("edge list: expected an integer", at);
        pos = static_cast<std::size_t>(ptr - text.data());
        return std::pair{value, at};
    }
};

}  // namespace

Graph parse_edge_list(std::string_view text) {
    Tokenizer tok{text};
    const auto n = tok.next_int();
    const auto m = tok.next_int();
    if (!n || !m) throw ParseError("edge list: missing \"n m\" header", tok.pos);
    if (n->first < 0 || m->first < 0) throw ParseError("edge list: negative header value", n->second);
    std::vector<Edge> es;
    for (long i = 0; i < m->first; ++i) {
        const auto u = tok.next_int();
        const auto v = tok.next_int();
        if (!u || !v) throw ParseError("edge list: fewer edges than declared", tok.pos);
        if (u->first < 0 || u->first >= n->first) throw ParseError("edge list: endpoint out of range", u->second);
        if (v->first < 0 || v->first >= n->first) throw ParseError("edge list: endpoint out of range", v->second);
        if (u->first == v->first) throw ParseError("edge list: loop", u->second);
        es.push_back(Edge::make(static_cast<int>(u->first), static_cast<int>(v->first)));
    }
    if (tok.next_int()) throw ParseError("edge list: more edges than declared", tok.pos);
    std::sort(es.begin(), es.end());
    if (std::adjacent_find(es.begin(), es.end()) != es.end()) throw ParseError("edge list: parallel edge", 0);
    return Graph(static_cast<int>(n->first), std::move(es));
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

// ---------------------------------------------------------------- Orientation

Orientation::Orientation(Graph base, std::vector<bool> forward)
    : Orientation(std::make_shared<const Graph>(std::move(base)), std::move(forward)) {}

Orientation::Orientation(std::shared_ptr<const Graph> base, std::vector<bool> forward)
    : base_(std::move(base)), forward_(std::move(forward)) {
    if (forward_.size() != base_->edge_count()) throw ContractViolation("orientation size does not match edge count");
    out_.assign(static_cast<std::size_t>(base_->vertex_count()), 0);
    for (std::size_t i = 0; i < forward_.size(); ++i) ++out_[static_cast<std::size_t>(arc(i).tail)];
}

Orientation Orientation::from_arcs(Graph base, std::span<const Arc> arcs) {
    std::vector<bool> forward(base.edge_count(), true);
    std::vector<bool> seen(base.edge_count(), false);
    for (const auto& a : arcs) {
        const auto idx = base.edge_index(a.tail, a.head);
        if (!idx) throw ContractViolation("arc " + std::to_string(a.tail) + "->" + std::to_string(a.head) + " is not a base edge");
        if (seen[*idx]) throw ContractViolation("edge oriented twice");
        seen[*idx] = true;
        forward[*idx] = a.tail < a.head;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw ContractViolation("some edge left unoriented");
    return Orientation(std::move(base), std::move(forward));
}

Orientation Orientation::from_bits(std::shared_ptr<const Graph> base, std::uint64_t bits) {
    std::vector<bool> forward(base->edge_count());
    for (std::size_t i = 0; i < forward.size(); ++i) forward[i] = ((bits >> i) & 1U) == 0;
    return Orientation(std::move(base), std::move(forward));
}

Arc Orientation::arc(std::size_t edge) const {
    const auto& e = base_->edge(edge);
    return forward_[edge] ? Arc{e.u, e.v} : Arc{e.v, e.u};
}

std::vector<Arc> Orientation::arcs() const {
    std::vector<Arc> out;
    out.reserve(forward_.size());
    for (std::size_t i = 0; i < forward_.size(); ++i) out.push_back(arc(i));
    return out;
}

bool Orientation::has_arc(Vertex tail, Vertex head) const {
    const auto idx = base_->edge_index(tail, head);
    return idx && arc(*idx).tail == tail;
}

int Orientation::indegree(Vertex v) const { return base_->degree(v) - outdegree(v); }

std::vector<Vertex> Orientation::out_neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex w : base_->neighbors(v).members())
        if (has_arc(v, w)) out.push_back(w);
    return out;
}

AllOrientations::AllOrientations(const Graph& g, const Caps& caps) : base_(std::make_shared<const Graph>(g)) {
    if (g.edge_count() > caps.orientation_edges) {
        throw CapExceeded("orient_all: " + std::to_string(g.edge_count()) + " edges exceeds the cap of " +
                          std::to_string(caps.orientation_edges));
    }
    count_ = std::uint64_t{1} << g.edge_count();
}

// ---------------------------------------------------------------- BipartiteSplit

BipartiteSplit::BipartiteSplit(Graph base, VertexSet d_side)
    : base_(std::move(base)), d_side_(std::move(d_side)), x_side_(d_side_.complement()) {
    if (d_side_.universe() != base_.vertex_count()) throw ContractViolation("d_side universe does not match graph");
    for (const auto& e : base_.edges())
        if (d_side_.contains(e.u) != d_side_.contains(e.v)) cross_.push_back(e);
}

}  // namespace koptlab
