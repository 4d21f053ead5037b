#include "sfo/local.hpp"

#include <cassert>
#include <cmath>
#include <string>
#include <unordered_map>

#include "sfo/prs.hpp"

namespace sfo {

std::uint64_t truncation_threshold(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps-range", "eps must lie in (0,1)");
    return ceil_guarded(72.0 * std::log(73.0 / eps));
}

namespace detail {
thread_local bool paranoid_walk_checks = false;
}  // namespace detail

namespace {

// Reusable per-thread walk state with O(1) reset via epoch stamps. Edge
// words pack (stamp << 32 | head) so one cache touch serves both the
// visited test and the revealed orientation; clearing the stamp keeps the
// stale head, which the truncated edge sampler reports.
struct Walk {
    std::vector<std::uint64_t> edge_word;
    std::vector<std::uint64_t> path_stamp;  // vertex on path iff == epoch
    std::vector<VertexId> path;
    std::uint64_t epoch = 0;

    void prepare(int n, int m) {
        if (static_cast<int>(edge_word.size()) < m) edge_word.resize(static_cast<std::size_t>(m), 0);
        if (static_cast<int>(path_stamp.size()) < n) path_stamp.resize(static_cast<std::size_t>(n), 0);
        path.clear();
        ++epoch;
        if (epoch >= (std::uint64_t{1} << 32)) {  // stamp space exhausted; hard reset
            std::fill(edge_word.begin(), edge_word.end(), 0);
            std::fill(path_stamp.begin(), path_stamp.end(), 0);
            epoch = 1;
        }
    }

    bool visited(EdgeId e) const { return (edge_word[static_cast<std::size_t>(e)] >> 32) == epoch; }
    void set_visited(EdgeId e, VertexId head) {
        edge_word[static_cast<std::size_t>(e)] =
            (epoch << 32) | static_cast<std::uint32_t>(head);
    }
    void unvisit(EdgeId e) { edge_word[static_cast<std::size_t>(e)] &= 0xFFFFFFFFULL; }
    VertexId head(EdgeId e) const {
        return static_cast<VertexId>(edge_word[static_cast<std::size_t>(e)] & 0xFFFFFFFFULL);
    }

    bool on_path(VertexId u) const { return path_stamp[static_cast<std::size_t>(u)] == epoch; }
    void push(VertexId u) {
        path.push_back(u);
        path_stamp[static_cast<std::size_t>(u)] = epoch;
    }
    void pop() {
        path_stamp[static_cast<std::size_t>(path.back())] = 0;
        path.pop_back();
    }
};

thread_local Walk tl_walk;

struct TraceState {
    TraceRecord* rec;
    std::int64_t prev_x2;
    std::int64_t y2;

    explicit TraceState(TraceRecord* r, std::int64_t x0) : rec(r), prev_x2(2 * x0), y2(2 * x0) {
        if (rec) {
            rec->clear();
            rec->x0 = x0;
        }
    }
    void record(std::int64_t path_len, bool last_unvisited) {
        if (!rec) return;
        std::int64_t x2 = 2 * path_len;
        std::int64_t c2 = last_unvisited ? 0 : 1;
        y2 += (x2 - prev_x2) - c2;
        rec->steps.push_back({x2, y2, c2});
        prev_x2 = x2;
    }
};

// First unvisited live edge at u in adjacency order; also reports whether
// it is the only one (the c_i = 0 case of the martingale bookkeeping).
struct Pick {
    EdgeId edge = -1;
    VertexId other = -1;
    bool only_unvisited = false;
};

Pick pick_unvisited(const GraphView& view, const Walk& walk, VertexId u) {
    Pick p;
    for (const IncidentEdge& ie : view.graph().incident(u)) {
        if (!view.live(ie.edge) || walk.visited(ie.edge)) continue;
        if (p.edge < 0) {
            p.edge = ie.edge;
            p.other = ie.other;
            p.only_unvisited = true;
        } else {
            p.only_unvisited = false;
            break;
        }
    }
    return p;
}

// Case (b1): the revealed extension hits the path, or w already has a
// visited edge pointing from w to a path vertex.
bool closes_on_path(const GraphView& view, const Walk& walk, VertexId w) {
    if (walk.on_path(w)) return true;
    for (const IncidentEdge& ie : view.graph().incident(w)) {
        if (!view.live(ie.edge) || !walk.visited(ie.edge)) continue;
        VertexId h = walk.head(ie.edge);
        if (h != w && walk.on_path(h)) return true;
    }
    return false;
}

void unvisit_all_at(const GraphView& view, Walk& walk, VertexId u) {
    for (const IncidentEdge& ie : view.graph().incident(u))
        if (view.live(ie.edge)) walk.unvisit(ie.edge);
}

// Path-shape invariant, re-checked per iteration under the paranoid flag:
// consecutive path vertices are joined by a visited forward edge, and every
// visited live edge points at a vertex currently on the path.
void validate_walk(const GraphView& view, const Walk& walk) {
    const Graph& g = view.graph();
    for (std::size_t i = 0; i + 1 < walk.path.size(); ++i) {
        VertexId a = walk.path[i], b = walk.path[i + 1];
        bool joined = false;
        for (const IncidentEdge& ie : g.incident(a)) {
            if (view.live(ie.edge) && ie.other == b && walk.visited(ie.edge) &&
                walk.head(ie.edge) == b) {
                joined = true;
                break;
            }
        }
        if (!joined) throw std::logic_error("walk invariant: path edge missing or backward");
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (view.live(e) && walk.visited(e) && !walk.on_path(walk.head(e)))
            throw std::logic_error("walk invariant: visited edge points off the path");
}

}  // namespace

VertexSample sample_vertex(const GraphView& view, const VertexSet& s, VertexId v,
                           ResamplingTable& table, const TruncationPolicy& policy,
                           TraceRecord* trace) {
    const Graph& g = view.graph();
    if (v < 0 || v >= g.vertex_count()) throw DomainError("vertex-range", "vertex id out of range");
    if (s.contains(v)) throw DomainError("vertex-in-s", "query vertex lies in S");
    if (!policy.finite() && omega_empty(view, s))
        throw DomainError("omega-empty", "unbounded run with Omega_S empty would not terminate");

    Walk& walk = tl_walk;
    walk.prepare(g.vertex_count(), g.edge_count());
    walk.push(v);
    TraceState ts(trace, 1);
    std::uint64_t coins = 0;

    while (!walk.path.empty()) {
        if (detail::paranoid_walk_checks) validate_walk(view, walk);
        VertexId u = walk.path.back();
        if (walk.path.size() >= 2 && !s.contains(u)) return {1, coins, false};

        Pick p = pick_unvisited(view, walk, u);
        if (p.edge < 0) {
            // u is a revealed sink; pop it and backtrack.
            unvisit_all_at(view, walk, u);
            walk.pop();
            continue;
        }

        if (policy.finite() && coins >= policy.max_coin_steps) return {1, coins, true};
        int bit = table.draw(p.edge);
        ++coins;
        const Edge& ed = g.edge(p.edge);
        VertexId head = bit ? ed.b : ed.a;
        walk.set_visited(p.edge, head);
        if (head == p.other) {
            // Oriented away from u.
            if (closes_on_path(view, walk, p.other)) {
                ts.record(static_cast<std::int64_t>(walk.path.size()), p.only_unvisited);
                return {1, coins, false};
            }
            walk.push(p.other);
        }
        ts.record(static_cast<std::int64_t>(walk.path.size()), p.only_unvisited);
    }
    return {0, coins, false};
}

EdgeSample sample_edge(const GraphView& view, const VertexSet& s, EdgeId e,
                       ResamplingTable& table, const TruncationPolicy& policy,
                       TraceRecord* trace) {
    const Graph& g = view.graph();
    if (e < 0 || e >= g.edge_count()) throw DomainError("edge-range", "edge id out of range");
    if (!view.live(e)) throw DomainError("edge-range", "query edge is not live");
    if (!policy.finite() && omega_empty(view, s))
        throw DomainError("omega-empty", "unbounded run with Omega_S empty would not terminate");

    Walk& walk = tl_walk;
    walk.prepare(g.vertex_count(), g.edge_count());
    const Edge& qe = g.edge(e);
    TraceState ts(trace, 2);
    std::uint64_t coins = 0;

    auto result = [&](bool truncated) {
        VertexId head = walk.head(e);
        return EdgeSample{e, qe.other(head), head, coins, truncated};
    };
    // Draw e and restart the path across it. Used for the initial draw and
    // for every reinitialisation after a pop released the query edge.
    auto redraw_query = [&]() {
        while (!walk.path.empty()) walk.pop();
        VertexId head = table.draw(e) ? qe.b : qe.a;
        ++coins;
        walk.set_visited(e, head);
        walk.push(qe.other(head));
        walk.push(head);
        ts.record(2, false);
    };

    redraw_query();

    while (true) {
        if (detail::paranoid_walk_checks) validate_walk(view, walk);
        VertexId u = walk.path.back();
        if (walk.path.size() >= 2 && !s.contains(u)) return result(false);

        bool reinit = walk.path.size() == 1 && !walk.visited(e);
        Pick p;
        if (!reinit) {
            p = pick_unvisited(view, walk, u);
            if (p.edge < 0) {
                if (walk.path.size() == 1) {
                    // Singleton all-visited juncture: every edge at u points
                    // to u. Terminate iff u is outside S; otherwise pop u
                    // and reinitialise from a fresh draw of e.
                    if (!s.contains(u)) return result(false);
                    unvisit_all_at(view, walk, u);
                    reinit = true;
                } else {
                    unvisit_all_at(view, walk, u);
                    walk.pop();
                    continue;
                }
            }
        }

        if (policy.finite() && coins >= policy.max_coin_steps) return result(true);

        if (reinit) {
            redraw_query();
            continue;
        }

        int bit = table.draw(p.edge);
        ++coins;
        const Edge& ed = g.edge(p.edge);
        VertexId head = bit ? ed.b : ed.a;
        walk.set_visited(p.edge, head);
        if (head == p.other) {
            if (closes_on_path(view, walk, p.other)) {
                ts.record(static_cast<std::int64_t>(walk.path.size()), p.only_unvisited);
                assert(walk.visited(e));
                return result(false);
            }
            walk.push(p.other);
        }
        ts.record(static_cast<std::int64_t>(walk.path.size()), p.only_unvisited);
    }
}

bool coupled_completion_check(const Graph& g, const VertexSet& s, VertexId v, std::uint64_t seed) {
    ResamplingTable local_table(seed, g.edge_count());
    VertexSample x = sample_vertex(GraphView(g), s, v, local_table);
    ResamplingTable prs_table(seed, g.edge_count());
    Orientation sigma = prs_sample(g, s, prs_table);
    return (x.value == 1) == !is_sink(g, sigma, v);
}

namespace {

// State of the vertex walk between coins: the path plus per-edge status
// (0 unvisited, 1 head = a, 2 head = b). Stale orientations of unvisited
// edges never influence the output, so they are erased, which also
// canonicalises the encoding.
struct EnumState {
    std::vector<std::int8_t> status;
    std::vector<VertexId> path;

    std::string key() const {
        std::string k;
        k.reserve(status.size() + path.size() + 1);
        for (std::int8_t st : status) k.push_back(static_cast<char>(st));
        k.push_back(static_cast<char>(0x7f));
        for (VertexId u : path) k.push_back(static_cast<char>(u));
        return k;
    }
};

constexpr int kTerminalZero = -1;
constexpr int kTerminalOne = -2;

class Enumerator {
public:
    Enumerator(const Graph& g, const VertexSet& s, VertexId v, std::uint64_t budget, bool force)
        : g_(g), s_(s), budget_(budget), force_(force) {
        EnumState init;
        init.status.assign(static_cast<std::size_t>(g.edge_count()), 0);
        init.path.push_back(v);
        init_node_ = settle(std::move(init));
        if (init_node_ >= 0) {
            // Breadth-first discovery of every reachable pre-coin state.
            for (std::size_t i = 0; i < states_.size(); ++i) {
                EnumState st = states_[i];  // copy: children mutate
                auto [c0, c1] = expand(st);
                children_.push_back({c0, c1});
            }
        }
    }

    int init_node() const { return init_node_; }
    std::uint64_t state_count() const { return states_.size(); }
    bool budget_hit() const { return budget_hit_; }

    // Value and truncated-mass numerators at the initial state after
    // `depth` coin levels; denominators are 2^depth.
    std::pair<BigInt, BigInt> run(std::uint64_t depth) const {
        if (init_node_ == kTerminalZero) return {BigInt(0), BigInt(0)};
        if (init_node_ == kTerminalOne) return {pow2(static_cast<unsigned>(depth)), BigInt(0)};
        std::size_t count = states_.size();
        std::vector<BigInt> val(count, BigInt(1)), mass(count, BigInt(1));
        std::vector<BigInt> val_next(count), mass_next(count);
        BigInt leaf = 1;  // 2^{r-1}: value of a terminal-1 child at level r
        for (std::uint64_t r = 1; r <= depth; ++r) {
            for (std::size_t i = 0; i < count; ++i) {
                BigInt v_acc = 0, m_acc = 0;
                for (int c : {children_[i].first, children_[i].second}) {
                    if (c == kTerminalOne)
                        v_acc += leaf;
                    else if (c >= 0) {
                        v_acc += val[static_cast<std::size_t>(c)];
                        m_acc += mass[static_cast<std::size_t>(c)];
                    }
                }
                val_next[i] = std::move(v_acc);
                mass_next[i] = std::move(m_acc);
            }
            val.swap(val_next);
            mass.swap(mass_next);
            leaf <<= 1;
        }
        auto root = static_cast<std::size_t>(init_node_);
        return {val[root], mass[root]};
    }

private:
    // Run the coin-free part of the loop to quiescence: returns a terminal
    // or the id of the pre-coin state.
    int settle(EnumState st) {
        while (true) {
            if (st.path.empty()) return kTerminalZero;
            VertexId u = st.path.back();
            if (st.path.size() >= 2 && !s_.contains(u)) return kTerminalOne;
            bool any_unvisited = false;
            for (const IncidentEdge& ie : g_.incident(u)) {
                if (st.status[static_cast<std::size_t>(ie.edge)] == 0) {
                    any_unvisited = true;
                    break;
                }
            }
            if (any_unvisited) return intern(std::move(st));
            for (const IncidentEdge& ie : g_.incident(u)) st.status[static_cast<std::size_t>(ie.edge)] = 0;
            st.path.pop_back();
        }
    }

    int intern(EnumState st) {
        std::string k = st.key();
        auto it = index_.find(k);
        if (it != index_.end()) return it->second;
        if (states_.size() >= budget_) {
            budget_hit_ = true;
            if (!force_)
                throw DomainError("budget-exceeded",
                                  "enumeration state budget exceeded (" + std::to_string(budget_) +
                                      "); raise it or pass force");
        }
        int id = static_cast<int>(states_.size());
        states_.push_back(std::move(st));
        index_.emplace(std::move(k), id);
        return id;
    }

    std::pair<int, int> expand(const EnumState& pre) {
        VertexId u = pre.path.back();
        EdgeId e = -1;
        VertexId w = -1;
        for (const IncidentEdge& ie : g_.incident(u)) {
            if (pre.status[static_cast<std::size_t>(ie.edge)] == 0) {
                e = ie.edge;
                w = ie.other;
                break;
            }
        }
        const Edge& ed = g_.edge(e);
        int toward_child, away_child;
        {
            EnumState st = pre;  // revealed toward u: nothing else changes
            st.status[static_cast<std::size_t>(e)] = static_cast<std::int8_t>(u == ed.a ? 1 : 2);
            toward_child = settle(std::move(st));
        }
        {
            EnumState st = pre;
            st.status[static_cast<std::size_t>(e)] = static_cast<std::int8_t>(w == ed.a ? 1 : 2);
            if (closes(st, w))
                away_child = kTerminalOne;
            else {
                st.path.push_back(w);
                away_child = settle(std::move(st));
            }
        }
        // Child order (away, toward) is the heads-first exploration order;
        // the value is order-independent.
        return {away_child, toward_child};
    }

    bool closes(const EnumState& st, VertexId w) const {
        for (VertexId pu : st.path)
            if (pu == w) return true;
        for (const IncidentEdge& ie : g_.incident(w)) {
            std::int8_t stt = st.status[static_cast<std::size_t>(ie.edge)];
            if (stt == 0) continue;
            const Edge& ed = g_.edge(ie.edge);
            VertexId head = stt == 1 ? ed.a : ed.b;
            if (head == w) continue;
            for (VertexId pu : st.path)
                if (pu == head) return true;
        }
        return false;
    }

    const Graph& g_;
    const VertexSet& s_;
    std::uint64_t budget_;
    bool force_;
    bool budget_hit_ = false;
    int init_node_ = kTerminalZero;
    std::vector<EnumState> states_;
    std::vector<std::pair<int, int>> children_;
    std::unordered_map<std::string, int> index_;
};

}  // namespace

Enumeration enumerate_vertex_estimator(const Graph& g, const VertexSet& s, VertexId v,
                                       std::uint64_t depth, std::uint64_t state_budget,
                                       bool force) {
    if (v < 0 || v >= g.vertex_count()) throw DomainError("vertex-range", "vertex id out of range");
    if (s.contains(v)) throw DomainError("vertex-in-s", "query vertex lies in S");
    if (depth == 0) throw DomainError("bad-policy", "enumeration depth must be >= 1");
    if (g.vertex_count() > 126) throw DomainError("cap-exceeded", "enumeration keys need n <= 126");

    Enumerator en(g, s, v, state_budget, force);
    auto [val, mass] = en.run(depth);
    BigInt den = pow2(static_cast<unsigned>(depth));
    Enumeration out;
    out.expectation = Rational(val, den);
    out.truncated_mass = Rational(mass, den);
    out.state_count = en.state_count();
    out.budget_hit = en.budget_hit();
    return out;
}

}  // namespace sfo
