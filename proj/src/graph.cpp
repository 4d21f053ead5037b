#include "sfo/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace sfo {

Graph::Graph(int vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ < 0) throw DomainError("bad-graph", "negative vertex count");
    adj_offset_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (EdgeId e = 0; e < edge_count(); ++e) {
        const Edge& ed = edges_[static_cast<std::size_t>(e)];
        if (ed.a < 0 || ed.a >= n_ || ed.b < 0 || ed.b >= n_)
            throw DomainError("bad-graph", "edge endpoint out of range");
        if (ed.a == ed.b) throw DomainError("self-loop", "self-loops are not supported");
        ++adj_offset_[static_cast<std::size_t>(ed.a) + 1];
        ++adj_offset_[static_cast<std::size_t>(ed.b) + 1];
    }
    for (std::size_t u = 0; u < static_cast<std::size_t>(n_); ++u)
        adj_offset_[u + 1] += adj_offset_[u];
    adj_flat_.resize(static_cast<std::size_t>(2) * static_cast<std::size_t>(edge_count()));
    std::vector<std::uint32_t> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
    for (EdgeId e = 0; e < edge_count(); ++e) {
        const Edge& ed = edges_[static_cast<std::size_t>(e)];
        adj_flat_[cursor[static_cast<std::size_t>(ed.a)]++] = {e, ed.b};
        adj_flat_[cursor[static_cast<std::size_t>(ed.b)]++] = {e, ed.a};
    }
}

std::span<const IncidentEdge> Graph::incident(VertexId u) const {
    if (u < 0 || u >= n_) throw DomainError("vertex-range", "vertex id out of range");
    auto i = static_cast<std::size_t>(u);
    return {adj_flat_.data() + adj_offset_[i], adj_flat_.data() + adj_offset_[i + 1]};
}

int Graph::degree(VertexId u) const {
    return static_cast<int>(incident(u).size());
}

int Graph::min_degree() const {
    if (n_ == 0) throw DomainError("empty-graph", "min_degree of an empty graph");
    int d = degree(0);
    for (VertexId u = 1; u < n_; ++u) d = std::min(d, degree(u));
    return d;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    throw DomainError("parse", "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

Graph Graph::parse(std::istream& in) {
    std::string raw;
    int line_no = 0;
    int n = -1;
    long m = -1;
    std::vector<Edge> edges;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(raw);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank line
        if (tok[0] == '#') continue;
        if (tok == "p") {
            if (n >= 0) parse_fail(line_no, "duplicate header");
            if (!(ls >> n >> m) || n < 0 || m < 0) parse_fail(line_no, "malformed header, expected 'p <n> <m>'");
            std::string extra;
            if (ls >> extra) parse_fail(line_no, "trailing tokens after header");
        } else if (tok == "e") {
            if (n < 0) parse_fail(line_no, "edge before header");
            long u, v;
            if (!(ls >> u >> v)) parse_fail(line_no, "malformed edge, expected 'e <u> <v>'");
            std::string extra;
            if (ls >> extra) parse_fail(line_no, "trailing tokens after edge");
            if (u < 0 || u >= n || v < 0 || v >= n) parse_fail(line_no, "vertex id out of range");
            if (u == v) parse_fail(line_no, "self-loop");
            if (static_cast<long>(edges.size()) == m) parse_fail(line_no, "more edges than declared");
            edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
        } else {
            parse_fail(line_no, "unknown record '" + tok + "'");
        }
    }
    if (n < 0) parse_fail(line_no, "missing header");
    if (static_cast<long>(edges.size()) != m) parse_fail(line_no, "fewer edges than declared");
    return Graph(n, std::move(edges));
}

Graph Graph::parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

std::string Graph::serialize() const {
    std::ostringstream out;
    out << "p " << n_ << ' ' << edge_count() << '\n';
    for (const Edge& e : edges_) out << "e " << e.a << ' ' << e.b << '\n';
    return out.str();
}

VertexSet VertexSet::all(int universe) {
    VertexSet s(universe);
    std::fill(s.member_.begin(), s.member_.end(), 1);
    s.count_ = universe;
    return s;
}

void VertexSet::insert(VertexId v) {
    auto& slot = member_[static_cast<std::size_t>(v)];
    if (!slot) {
        slot = 1;
        ++count_;
    }
}

void VertexSet::erase(VertexId v) {
    auto& slot = member_[static_cast<std::size_t>(v)];
    if (slot) {
        slot = 0;
        --count_;
    }
}

std::vector<VertexId> VertexSet::members() const {
    std::vector<VertexId> out;
    out.reserve(static_cast<std::size_t>(count_));
    for (VertexId v = 0; v < universe(); ++v)
        if (member_[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

std::uint64_t VertexSet::mask() const {
    if (universe() > 64) throw DomainError("cap-exceeded", "vertex set mask needs n <= 64");
    std::uint64_t m = 0;
    for (VertexId v = 0; v < universe(); ++v)
        if (member_[static_cast<std::size_t>(v)]) m |= std::uint64_t{1} << v;
    return m;
}

bool Orientation::total() const {
    for (VertexId h : head_)
        if (h < 0) return false;
    return true;
}

std::uint64_t Orientation::bits(const Graph& g) const {
    if (edge_count() > 64) throw DomainError("cap-exceeded", "orientation encoding needs m <= 64");
    std::uint64_t x = 0;
    for (EdgeId e = 0; e < edge_count(); ++e) {
        if (!oriented(e)) throw DomainError("partial-orientation", "encoding a partial orientation");
        if (head(e) == g.edge(e).b) x |= std::uint64_t{1} << e;
    }
    return x;
}

int GraphView::live_degree(VertexId u) const {
    if (live_ == nullptr) return g_->degree(u);
    int d = 0;
    for (const IncidentEdge& ie : g_->incident(u))
        if (live(ie.edge)) ++d;
    return d;
}

bool is_sink(const Graph& g, const Orientation& o, VertexId u) {
    for (const IncidentEdge& ie : g.incident(u)) {
        if (!o.oriented(ie.edge))
            throw DomainError("partial-orientation", "is_sink over an unoriented incident edge");
        if (o.head(ie.edge) != u) return false;
    }
    return true;
}

bool omega_empty(const Graph& g, const VertexSet& s) {
    return omega_empty(GraphView(g), s);
}

bool omega_empty(const GraphView& view, const VertexSet& s) {
    const Graph& g = view.graph();
    const int n = g.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<VertexId> stack;
    for (VertexId root = 0; root < n; ++root) {
        if (seen[static_cast<std::size_t>(root)]) continue;
        // Collect the component of root over live edges.
        long vertices = 0, edge_ends = 0;
        bool all_in_s = true;
        stack.assign(1, root);
        seen[static_cast<std::size_t>(root)] = 1;
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            ++vertices;
            if (!s.contains(u)) all_in_s = false;
            for (const IncidentEdge& ie : g.incident(u)) {
                if (!view.live(ie.edge)) continue;
                ++edge_ends;
                if (!seen[static_cast<std::size_t>(ie.other)]) {
                    seen[static_cast<std::size_t>(ie.other)] = 1;
                    stack.push_back(ie.other);
                }
            }
        }
        if (all_in_s && edge_ends / 2 == vertices - 1) return true;
    }
    return false;
}

}  // namespace sfo
