#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfo {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

// Domain failures carry a stable machine-readable code; the CLI maps them
// to exit code 1 and echoes the code in its JSON error object.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct Edge {
    VertexId a = -1;
    VertexId b = -1;
    VertexId other(VertexId u) const { return u == a ? b : a; }
    bool touches(VertexId u) const { return u == a || u == b; }
};

struct IncidentEdge {
    EdgeId edge;
    VertexId other;
};

// Immutable undirected multigraph. Edge ids are input positions, and each
// per-vertex incidence list keeps that order; this fixes every
// "first unvisited edge" tie-break used by the samplers.
class Graph {
public:
    Graph(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const IncidentEdge> incident(VertexId u) const;
    int degree(VertexId u) const;
    int min_degree() const;

    // Edge-list format: '#' comment lines, one "p <n> <m>" header, then
    // exactly m lines "e <u> <v>". Self-loops are rejected.
    static Graph parse(std::istream& in);
    static Graph parse(const std::string& text);
    std::string serialize() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    // CSR incidence: flat, id-ordered per vertex.
    std::vector<IncidentEdge> adj_flat_;
    std::vector<std::uint32_t> adj_offset_;
};

// The set of vertices required to be sink-free.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe) : member_(static_cast<std::size_t>(universe), 0) {}
    static VertexSet all(int universe);
    static VertexSet none(int universe) { return VertexSet(universe); }

    int universe() const { return static_cast<int>(member_.size()); }
    int count() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool contains(VertexId v) const { return member_[static_cast<std::size_t>(v)] != 0; }
    void insert(VertexId v);
    void erase(VertexId v);
    std::vector<VertexId> members() const;
    std::uint64_t mask() const;  // universe() <= 64 only

private:
    std::vector<char> member_;
    int count_ = 0;
};

// Total or partial orientation; head(e) is the vertex e points to.
class Orientation {
public:
    Orientation() = default;
    explicit Orientation(int edge_count) : head_(static_cast<std::size_t>(edge_count), -1) {}

    int edge_count() const { return static_cast<int>(head_.size()); }
    bool oriented(EdgeId e) const { return head_[static_cast<std::size_t>(e)] >= 0; }
    VertexId head(EdgeId e) const { return head_[static_cast<std::size_t>(e)]; }
    VertexId tail(const Graph& g, EdgeId e) const { return g.edge(e).other(head(e)); }
    void orient(EdgeId e, VertexId head_vertex) { head_[static_cast<std::size_t>(e)] = head_vertex; }
    void clear(EdgeId e) { head_[static_cast<std::size_t>(e)] = -1; }
    bool total() const;
    // Canonical encoding: bit e set iff head(e) == edge(e).b. Requires m <= 64.
    std::uint64_t bits(const Graph& g) const;
    bool operator==(const Orientation&) const = default;

private:
    std::vector<VertexId> head_;
};

// Residual view used by the sequential sampler: the graph restricted to
// "live" edges. A default-constructed view keeps every edge live.
class GraphView {
public:
    explicit GraphView(const Graph& g) : g_(&g), live_(nullptr) {}
    GraphView(const Graph& g, const std::vector<char>& live) : g_(&g), live_(&live) {}

    const Graph& graph() const { return *g_; }
    bool live(EdgeId e) const { return live_ == nullptr || (*live_)[static_cast<std::size_t>(e)] != 0; }
    int live_degree(VertexId u) const;

private:
    const Graph* g_;
    const std::vector<char>* live_;
};

// True iff all edges incident to u point to u. A vertex with no incident
// edge is a sink (empty conjunction). Throws if an incident edge is
// unoriented.
bool is_sink(const Graph& g, const Orientation& o, VertexId u);

// True iff Omega_S is empty: some connected component lies entirely in S
// and is a tree (isolated vertices included).
bool omega_empty(const Graph& g, const VertexSet& s);
bool omega_empty(const GraphView& view, const VertexSet& s);

}  // namespace sfo
