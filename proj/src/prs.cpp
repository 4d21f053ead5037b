#include "sfo/prs.hpp"

#include <algorithm>
#include <set>

namespace sfo {

Orientation prs_sample(const Graph& g, const VertexSet& s, ResamplingTable& table,
                       RunStats* stats, SinkRule rule) {
    if (omega_empty(g, s)) throw DomainError("omega-empty", "Omega_S is empty");
    const int n = g.vertex_count();
    const int m = g.edge_count();

    Orientation sigma(m);
    std::vector<int> out_count(static_cast<std::size_t>(n), 0);
    for (EdgeId e = 0; e < m; ++e) {
        const Edge& ed = g.edge(e);
        sigma.orient(e, table.draw(e) ? ed.b : ed.a);
        ++out_count[static_cast<std::size_t>(sigma.tail(g, e))];
    }

    // Degree-0 vertices in S would make Omega_S empty, so every sink here
    // has incident edges and is characterised by out-degree zero.
    auto sinkish = [&](VertexId u) {
        return s.contains(u) && g.degree(u) > 0 && out_count[static_cast<std::size_t>(u)] == 0;
    };

    std::set<VertexId> sinks;
    for (VertexId u = 0; u < n; ++u)
        if (sinkish(u)) sinks.insert(u);

    std::uint64_t pops = 0;
    while (!sinks.empty()) {
        VertexId v = rule == SinkRule::kLowestId ? *sinks.begin() : *sinks.rbegin();
        // Resample every edge at v, consuming table entries in edge-id order
        // (the incidence list is already id-ordered).
        for (const IncidentEdge& ie : g.incident(v)) {
            VertexId old_tail = sigma.tail(g, ie.edge);
            --out_count[static_cast<std::size_t>(old_tail)];
            const Edge& ed = g.edge(ie.edge);
            sigma.orient(ie.edge, table.draw(ie.edge) ? ed.b : ed.a);
            ++out_count[static_cast<std::size_t>(sigma.tail(g, ie.edge))];
        }
        ++pops;
        // Only v and its neighbours can change sink status.
        if (sinkish(v))
            sinks.insert(v);
        else
            sinks.erase(v);
        for (const IncidentEdge& ie : g.incident(v)) {
            if (sinkish(ie.other))
                sinks.insert(ie.other);
            else
                sinks.erase(ie.other);
        }
    }

    if (stats) {
        stats->resample_events = pops;
        stats->bits_consumed = table.bits_consumed();
    }
    return sigma;
}

PopProfile pop_count_profile(const Graph& g, const VertexSet& s, std::uint64_t trials,
                             std::uint64_t seed) {
    if (trials == 0) throw DomainError("bad-trials", "trials must be positive");
    PopProfile prof;
    prof.trials = trials;
    prof.min_resample_events = ~std::uint64_t{0};
    ResamplingTable table(0, g.edge_count());
    double sum_events = 0, sum_bits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        table.reset(derive_seed(seed, seed_tag::kPopProfile, t));
        RunStats rs;
        prs_sample(g, s, table, &rs);
        sum_events += static_cast<double>(rs.resample_events);
        sum_bits += static_cast<double>(rs.bits_consumed);
        prof.min_resample_events = std::min(prof.min_resample_events, rs.resample_events);
        prof.max_resample_events = std::max(prof.max_resample_events, rs.resample_events);
    }
    prof.mean_resample_events = sum_events / static_cast<double>(trials);
    prof.mean_bits_consumed = sum_bits / static_cast<double>(trials);
    return prof;
}

}  // namespace sfo
