#include "sfo/oracle.hpp"

#include <unordered_map>

namespace sfo {

namespace {

void check_edge_cap(const Graph& g, const OracleLimits& lim) {
    if (g.edge_count() > lim.max_edges)
        throw DomainError("cap-exceeded", "brute force cap: m = " + std::to_string(g.edge_count()) +
                                              " > " + std::to_string(lim.max_edges));
}

// Per-vertex masks over the canonical orientation code: vertex u is a sink
// in code x iff (x & incident) == toward.
struct SinkMasks {
    std::vector<std::uint64_t> incident;
    std::vector<std::uint64_t> toward;
};

SinkMasks sink_masks(const Graph& g) {
    SinkMasks mk;
    mk.incident.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    mk.toward.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        mk.incident[static_cast<std::size_t>(ed.a)] |= std::uint64_t{1} << e;
        mk.incident[static_cast<std::size_t>(ed.b)] |= std::uint64_t{1} << e;
        mk.toward[static_cast<std::size_t>(ed.b)] |= std::uint64_t{1} << e;
    }
    return mk;
}

std::uint64_t count_valid(const Graph& g, const std::vector<VertexId>& constrained,
                          const SinkMasks& mk) {
    const std::uint64_t total = std::uint64_t{1} << g.edge_count();
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < total; ++x) {
        bool ok = true;
        for (VertexId u : constrained) {
            auto i = static_cast<std::size_t>(u);
            if ((x & mk.incident[i]) == mk.toward[i]) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

}  // namespace

BigInt count_sfo_bruteforce(const Graph& g, const VertexSet& s, const OracleLimits& lim) {
    check_edge_cap(g, lim);
    return BigInt(count_valid(g, s.members(), sink_masks(g)));
}

Rational marginal_bruteforce(const Graph& g, const VertexSet& s, VertexId v,
                             const OracleLimits& lim) {
    if (s.contains(v)) throw DomainError("vertex-in-s", "marginal target lies in S");
    check_edge_cap(g, lim);
    SinkMasks mk = sink_masks(g);
    std::vector<VertexId> base = s.members();
    std::uint64_t den = count_valid(g, base, mk);
    if (den == 0) throw DomainError("omega-empty", "Omega_S is empty");
    base.push_back(v);
    std::uint64_t num = count_valid(g, base, mk);
    return Rational(BigInt(num), BigInt(den));
}

Rational edge_marginal_bruteforce(const Graph& g, const VertexSet& s, EdgeId e,
                                  const OracleLimits& lim) {
    if (e < 0 || e >= g.edge_count()) throw DomainError("edge-range", "edge id out of range");
    check_edge_cap(g, lim);
    SinkMasks mk = sink_masks(g);
    const std::vector<VertexId> constrained = s.members();
    const std::uint64_t total = std::uint64_t{1} << g.edge_count();
    std::uint64_t den = 0, num = 0;
    for (std::uint64_t x = 0; x < total; ++x) {
        bool ok = true;
        for (VertexId u : constrained) {
            auto i = static_cast<std::size_t>(u);
            if ((x & mk.incident[i]) == mk.toward[i]) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        ++den;
        if (x & (std::uint64_t{1} << e)) ++num;
    }
    if (den == 0) throw DomainError("omega-empty", "Omega_S is empty");
    return Rational(BigInt(num), BigInt(den));
}

ExactDistribution distribution_bruteforce(const Graph& g, const VertexSet& s,
                                          const OracleLimits& lim) {
    check_edge_cap(g, lim);
    SinkMasks mk = sink_masks(g);
    const std::vector<VertexId> constrained = s.members();
    const std::uint64_t total = std::uint64_t{1} << g.edge_count();
    ExactDistribution dist;
    for (std::uint64_t x = 0; x < total; ++x) {
        bool ok = true;
        for (VertexId u : constrained) {
            auto i = static_cast<std::size_t>(u);
            if ((x & mk.incident[i]) == mk.toward[i]) {
                ok = false;
                break;
            }
        }
        if (ok) dist.support.push_back(x);
    }
    if (dist.support.empty()) throw DomainError("omega-empty", "Omega_S is empty");
    dist.mass_each = Rational(BigInt(1), BigInt(static_cast<std::uint64_t>(dist.support.size())));
    return dist;
}

std::vector<std::uint64_t> sfo_counts_by_sinkset(const Graph& g, const OracleLimits& lim) {
    check_edge_cap(g, lim);
    const int n = g.vertex_count();
    if (n > lim.max_vertices)
        throw DomainError("cap-exceeded", "subset sweep cap: n > " + std::to_string(lim.max_vertices));
    SinkMasks mk = sink_masks(g);
    const std::uint64_t total = std::uint64_t{1} << g.edge_count();
    // exact[mask]: orientations whose sink set is exactly mask.
    std::vector<std::uint64_t> exact(std::size_t{1} << n, 0);
    for (std::uint64_t x = 0; x < total; ++x) {
        std::uint64_t sinks = 0;
        for (VertexId u = 0; u < n; ++u) {
            auto i = static_cast<std::size_t>(u);
            if ((x & mk.incident[i]) == mk.toward[i]) sinks |= std::uint64_t{1} << u;
        }
        ++exact[sinks];
    }
    // Subset-sum: f[t] = number of orientations whose sink set is inside t;
    // then |Omega_S| = f[complement of S].
    for (int b = 0; b < n; ++b)
        for (std::uint64_t t = 0; t < (std::uint64_t{1} << n); ++t)
            if (t & (std::uint64_t{1} << b)) exact[t] += exact[t ^ (std::uint64_t{1} << b)];
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> omega(std::size_t{1} << n);
    for (std::uint64_t smask = 0; smask <= full; ++smask) omega[smask] = exact[full & ~smask];
    return omega;
}

WeightVector sfo_weights(const Graph& g) {
    WeightVector w;
    w.reserve(static_cast<std::size_t>(g.vertex_count()));
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        w.push_back(Rational(BigInt(1), pow2(static_cast<unsigned>(g.degree(u)))));
    return w;
}

WeightVector scaled_weights(const WeightVector& w, const Rational& factor) {
    WeightVector out = w;
    for (Rational& r : out) r *= factor;
    return out;
}

namespace {

struct QPolyContext {
    const WeightVector& w;
    std::vector<std::uint64_t> closed;  // vertex -> closed-neighbourhood mask
    std::unordered_map<std::uint64_t, Rational> memo;

    QPolyContext(const Graph& g, const WeightVector& weights) : w(weights) {
        closed.assign(static_cast<std::size_t>(g.vertex_count()), 0);
        for (VertexId u = 0; u < g.vertex_count(); ++u) {
            std::uint64_t m = std::uint64_t{1} << u;
            for (const IncidentEdge& ie : g.incident(u)) m |= std::uint64_t{1} << ie.other;
            closed[static_cast<std::size_t>(u)] = m;
        }
    }

    Rational q(std::uint64_t mask) {
        if (mask == 0) return Rational(1);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        int u = std::countr_zero(mask);  // lowest-indexed pivot
        Rational val = q(mask & ~(std::uint64_t{1} << u)) -
                       w[static_cast<std::size_t>(u)] * q(mask & ~closed[static_cast<std::size_t>(u)]);
        memo.emplace(mask, val);
        return val;
    }
};

}  // namespace

Rational q_poly(const Graph& g, const WeightVector& w, const VertexSet& j) {
    if (g.vertex_count() > 64) throw DomainError("cap-exceeded", "q_poly needs n <= 64");
    if (static_cast<int>(w.size()) != g.vertex_count())
        throw DomainError("bad-weights", "weight vector size mismatch");
    QPolyContext ctx(g, w);
    return ctx.q(j.mask());
}

bool shearer_membership(const Graph& g, const WeightVector& w, const OracleLimits& lim) {
    const int n = g.vertex_count();
    if (n > lim.max_vertices)
        throw DomainError("cap-exceeded", "shearer cap: n > " + std::to_string(lim.max_vertices));
    if (static_cast<int>(w.size()) != n) throw DomainError("bad-weights", "weight vector size mismatch");
    QPolyContext ctx(g, w);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        if (ctx.q(mask) <= 0) return false;
    return true;
}

bool verify_pj_qj(const Graph& g, const VertexSet& j, const OracleLimits& lim) {
    check_edge_cap(g, lim);
    if (g.min_degree() < 3) throw DomainError("min-degree", "P_J = q_J needs min degree >= 3");
    Rational lhs(count_sfo_bruteforce(g, j, lim), pow2(static_cast<unsigned>(g.edge_count())));
    return lhs == q_poly(g, sfo_weights(g), j);
}

}  // namespace sfo
