#include "sfo/fastsampler.hpp"

#include <cmath>

namespace sfo {

namespace {

// Focus discipline guarantee (INVARIANT-D2): when a truncated edge sample
// runs on e, at most one vertex of S_live has residual degree <= 2, and if
// one exists it has degree exactly 2 and is an endpoint of e. Violations
// indicate a schedule bug and are always fatal.
void check_d2(const Graph& g, const VertexSet& s_live, const std::vector<int>& live_deg,
              int low_count, EdgeId e) {
    if (low_count == 0) return;
    if (low_count > 1)
        throw std::logic_error("INVARIANT-D2 violated: several low-degree vertices in S");
    const Edge& ed = g.edge(e);
    for (VertexId u : {ed.a, ed.b})
        if (s_live.contains(u) && live_deg[static_cast<std::size_t>(u)] == 2) return;
    throw std::logic_error("INVARIANT-D2 violated: low-degree vertex away from the sampled edge");
}

}  // namespace

Orientation sample_sfo_fast(const Graph& g, double eps, std::uint64_t seed, const FastOptions& opt,
                            std::vector<ScheduleEvent>* trace) {
    if (g.vertex_count() == 0) throw DomainError("empty-graph", "empty graph");
    if (g.min_degree() < 3) throw DomainError("min-degree", "fast sampler needs min degree >= 3");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps-range", "eps must lie in (0,1)");

    const int n = g.vertex_count();
    const int m = g.edge_count();
    const TruncationPolicy policy =
        opt.unbounded ? TruncationPolicy::unbounded()
                      : TruncationPolicy::bounded(ceil_guarded(
                            opt.trunc_c * std::log(static_cast<double>(m) / eps)));

    std::vector<char> live(static_cast<std::size_t>(m), 1);
    std::vector<int> live_deg(static_cast<std::size_t>(n));
    for (VertexId u = 0; u < n; ++u) live_deg[static_cast<std::size_t>(u)] = g.degree(u);
    VertexSet s_live = VertexSet::all(n);
    GraphView view(g, live);
    Orientation committed(m);
    ResamplingTable table(0, m);

    // Number of S_live vertices with residual degree <= 2; min degree 3
    // makes it start at zero.
    int low_count = 0;
    auto drop_degree = [&](VertexId u) {
        int& d = live_deg[static_cast<std::size_t>(u)];
        --d;
        if (d == 2 && s_live.contains(u)) ++low_count;
    };
    auto remove_from_s = [&](VertexId u) {
        if (!s_live.contains(u)) return;
        if (live_deg[static_cast<std::size_t>(u)] <= 2) --low_count;
        s_live.erase(u);
    };
    auto remove_edge = [&](EdgeId e) {
        live[static_cast<std::size_t>(e)] = 0;
        drop_degree(g.edge(e).a);
        drop_degree(g.edge(e).b);
    };

    VertexId cursor = 0;  // vertices only ever leave S_live, so this scans forward
    auto lowest_in_s = [&]() {
        while (!s_live.contains(cursor)) ++cursor;
        return cursor;
    };

    std::uint64_t calls = 0;
    VertexId focus = lowest_in_s();
    while (!s_live.empty()) {
        if (!s_live.contains(focus)) focus = lowest_in_s();

        if (live_deg[static_cast<std::size_t>(focus)] == 1) {
            // Deterministic conditioning: the leftover edge points away
            // from the focus and consumes no coin budget.
            EdgeId e = -1;
            for (const IncidentEdge& ie : g.incident(focus)) {
                if (live[static_cast<std::size_t>(ie.edge)]) {
                    e = ie.edge;
                    break;
                }
            }
            VertexId head = g.edge(e).other(focus);
            committed.orient(e, head);
            remove_edge(e);
            remove_from_s(focus);
            if (trace) trace->push_back({focus, e, focus, head, true, false});
            if (s_live.contains(head)) focus = head;
            continue;
        }

        // Lowest-id live edge at the focus (incidence lists are id-ordered).
        EdgeId e = -1;
        for (const IncidentEdge& ie : g.incident(focus)) {
            if (live[static_cast<std::size_t>(ie.edge)]) {
                e = ie.edge;
                break;
            }
        }
        check_d2(g, s_live, live_deg, low_count, e);

        table.reset(derive_seed(seed, seed_tag::kFastEdge, calls++));
        EdgeSample es = sample_edge(view, s_live, e, table, policy);
        committed.orient(e, es.head);
        remove_edge(e);
        remove_from_s(es.tail);
        if (trace) trace->push_back({focus, e, es.tail, es.head, false, es.truncated});
        if (!s_live.contains(focus) && s_live.contains(es.head)) focus = es.head;
    }

    // S is exhausted; the leftover edges are unconstrained.
    table.reset(derive_seed(seed, seed_tag::kFastFill, 0));
    for (EdgeId e = 0; e < m; ++e) {
        if (live[static_cast<std::size_t>(e)]) {
            const Edge& ed = g.edge(e);
            committed.orient(e, table.draw(e) ? ed.b : ed.a);
        }
    }
    return committed;
}

std::vector<ScheduleEvent> focus_schedule_trace(const Graph& g, double eps, std::uint64_t seed,
                                                const FastOptions& opt) {
    std::vector<ScheduleEvent> events;
    sample_sfo_fast(g, eps, seed, opt, &events);
    return events;
}

}  // namespace sfo
