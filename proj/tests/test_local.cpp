#include <doctest.h>

#include <cmath>

#include "sfo/harness.hpp"
#include "sfo/local.hpp"
#include "sfo/oracle.hpp"
#include "sfo/prs.hpp"

using namespace sfo;

namespace {

// Test-only reference for the enumerator: leaf-by-leaf recursion over the
// coin tree with copied states, following the sampler semantics directly.
struct SimState {
    std::vector<std::int8_t> status;  // 0 unvisited, 1 head = a, 2 head = b
    std::vector<VertexId> path;
};

int sim_settle(const Graph& g, const VertexSet& s, SimState& st) {
    for (;;) {
        if (st.path.empty()) return 0;
        VertexId u = st.path.back();
        if (st.path.size() >= 2 && !s.contains(u)) return 1;
        for (const IncidentEdge& ie : g.incident(u))
            if (st.status[static_cast<std::size_t>(ie.edge)] == 0) return -1;
        for (const IncidentEdge& ie : g.incident(u)) st.status[static_cast<std::size_t>(ie.edge)] = 0;
        st.path.pop_back();
    }
}

bool sim_closes(const Graph& g, const SimState& st, VertexId w) {
    for (VertexId u : st.path)
        if (u == w) return true;
    for (const IncidentEdge& ie : g.incident(w)) {
        std::int8_t stat = st.status[static_cast<std::size_t>(ie.edge)];
        if (stat == 0) continue;
        VertexId head = stat == 1 ? g.edge(ie.edge).a : g.edge(ie.edge).b;
        if (head == w) continue;
        for (VertexId u : st.path)
            if (u == head) return true;
    }
    return false;
}

Rational naive_expectation(const Graph& g, const VertexSet& s, SimState st, int coins_left) {
    int settled = sim_settle(g, s, st);
    if (settled >= 0) return Rational(settled);
    if (coins_left == 0) return Rational(1);
    VertexId u = st.path.back();
    EdgeId e = -1;
    VertexId w = -1;
    for (const IncidentEdge& ie : g.incident(u)) {
        if (st.status[static_cast<std::size_t>(ie.edge)] == 0) {
            e = ie.edge;
            w = ie.other;
            break;
        }
    }
    SimState away = st;
    away.status[static_cast<std::size_t>(e)] = static_cast<std::int8_t>(w == g.edge(e).a ? 1 : 2);
    Rational value_away;
    if (sim_closes(g, away, w)) {
        value_away = 1;
    } else {
        away.path.push_back(w);
        value_away = naive_expectation(g, s, std::move(away), coins_left - 1);
    }
    st.status[static_cast<std::size_t>(e)] = static_cast<std::int8_t>(u == g.edge(e).a ? 1 : 2);
    Rational value_toward = naive_expectation(g, s, std::move(st), coins_left - 1);
    return (value_away + value_toward) / 2;
}

Graph random_small_graph(PrfStream& rng, int min_n = 3, int max_n = 5, int max_m = 8) {
    for (;;) {
        int n = min_n + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - min_n + 1)));
        int m = n + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_m - n + 1)));
        std::vector<Edge> edges;
        for (int e = 0; e < m; ++e) {
            auto a = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
            auto b = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
            if (a == b) b = (b + 1) % n;
            edges.push_back({a, b});
        }
        Graph g(n, std::move(edges));
        bool positive_degrees = true;
        for (VertexId u = 0; u < n; ++u) positive_degrees = positive_degrees && g.degree(u) > 0;
        if (positive_degrees) return g;
    }
}

}  // namespace

TEST_CASE("truncation threshold") {
    CHECK(truncation_threshold(0.73) == 332);  // 72 ln 100 = 331.57..
    CHECK(truncation_threshold(73.0 * std::exp(-73.0)) == 5256);  // formally 72*73
    CHECK(truncation_threshold(0.999) == 309);  // 72 ln(73.073..) = 308.985..
    CHECK_THROWS_AS((void)truncation_threshold(0.0), DomainError);
    CHECK_THROWS_AS((void)truncation_threshold(1.0), DomainError);
}

TEST_CASE("sample_vertex preconditions") {
    Graph k4 = make_k4();
    ResamplingTable table(1, 6);
    VertexSet s = VertexSet::all(4);
    CHECK_THROWS_AS((void)sample_vertex(GraphView(k4), s, 2, table), DomainError);  // v in S

    // Unbounded run with Omega_S empty is rejected; a bounded one is not.
    Graph path_plus(4, {{0, 1}, {1, 2}});
    VertexSet tree_s(4);
    tree_s.insert(0);
    tree_s.insert(1);
    tree_s.insert(2);
    ResamplingTable t2(1, 2);
    CHECK_THROWS_AS((void)sample_vertex(GraphView(path_plus), tree_s, 3, t2), DomainError);
    CHECK_NOTHROW((void)sample_vertex(GraphView(path_plus), tree_s, 3, t2,
                                      TruncationPolicy::bounded(16)));
}

TEST_CASE("sample_vertex matches the oracle marginal (smoke)") {
    Graph k4 = make_k4();
    GraphView view(k4);
    ResamplingTable table(0, 6);

    VertexSet none = VertexSet::none(4);
    std::uint64_t hits = 0;
    const std::uint64_t n_samples = 20'000;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        table.reset(derive_seed(0x11, seed_tag::kSuite, i));
        hits += static_cast<std::uint64_t>(sample_vertex(view, none, 0, table).value);
    }
    CHECK(std::abs(static_cast<double>(hits) / n_samples - 7.0 / 8.0) < 0.015);

    VertexSet rest = VertexSet::all(4);
    rest.erase(0);
    hits = 0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        table.reset(derive_seed(0x12, seed_tag::kSuite, i));
        hits += static_cast<std::uint64_t>(sample_vertex(view, rest, 0, table).value);
    }
    CHECK(std::abs(static_cast<double>(hits) / n_samples - 4.0 / 5.0) < 0.015);
}

TEST_CASE("truncated sample_vertex forces 1 and stops consuming coins") {
    Graph k4 = make_k4();
    GraphView view(k4);
    VertexSet rest = VertexSet::all(4);
    rest.erase(0);
    ResamplingTable table(0, 6);
    for (std::uint64_t i = 0; i < 3000; ++i) {
        table.reset(derive_seed(0x13, seed_tag::kSuite, i));
        VertexSample x = sample_vertex(view, rest, 0, table, TruncationPolicy::bounded(2));
        REQUIRE(x.coin_steps <= 2);
        if (x.truncated) REQUIRE(x.value == 1);
    }
}

TEST_CASE("trace bookkeeping is always consistent with the martingale rule") {
    Graph k4 = make_k4();
    GraphView view(k4);
    VertexSet rest = VertexSet::all(4);
    rest.erase(0);
    ResamplingTable table(0, 6);
    TraceRecord trace;
    std::uint64_t drift_violation_runs = 0;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        table.reset(derive_seed(0x14, seed_tag::kSuite, i));
        sample_vertex(view, rest, 0, table, TruncationPolicy::unbounded(), &trace);
        // Structural bookkeeping holds on every run: c in {0, 1/2}, path
        // moves by at most one vertex per coin, and Y follows its update
        // rule (so X_i - Y_i telescopes to sum c_j).
        std::int64_t px2 = 2 * trace.x0, py2 = 2 * trace.x0;
        bool drift_ok = true;
        std::int64_t step = 0;
        for (const TraceStep& st : trace.steps) {
            ++step;
            REQUIRE((st.c2 == 0 || st.c2 == 1));
            REQUIRE(std::abs(st.x2 - px2) <= 2);
            REQUIRE(st.y2 == py2 + (st.x2 - px2) - st.c2);
            if (2 * (st.x2 - st.y2) < step) drift_ok = false;
            px2 = st.x2;
            py2 = st.y2;
        }
        REQUIRE(audit_trace(trace) == drift_ok);
        if (!drift_ok) ++drift_violation_runs;
    }
    // The per-step drift bound X_i - Y_i >= i/4 fails on a small fraction
    // of legitimate runs (consecutive zero-compensator coins around a pop
    // that restores a single edge); the auditor must report those runs.
    CHECK(drift_violation_runs > 0);
    CHECK(drift_violation_runs < 100);
}

TEST_CASE("drift counterexample regression") {
    // K4, S = {1,2,3}, v = 0, pinned table: the coin sequence yields
    // c = (1/2, 1/2, 0, 1/2, 0, 0, 1/2, 0, 0, ...), whose prefix sum 2 at
    // step 9 undercuts 9/4. The walk is legal: vertex 3 pops twice and the
    // restored path edge at vertex 1 is its only unvisited edge.
    Graph k4 = make_k4();
    VertexSet rest = VertexSet::all(4);
    rest.erase(0);
    ResamplingTable table(derive_seed(0x14, seed_tag::kSuite, 8), 6);
    TraceRecord trace;
    sample_vertex(GraphView(k4), rest, 0, table, TruncationPolicy::unbounded(), &trace);
    REQUIRE(trace.steps.size() == 12);
    CHECK(2 * (trace.steps[8].x2 - trace.steps[8].y2) < 9);
    CHECK_FALSE(audit_trace(trace));
}

TEST_CASE("truncation tail: forced-1 runs that would have returned 0 are rare") {
    // The consequence the truncation budget is chosen for: the chance that
    // a run passes T coins and still ends at 0 decays; empirically the
    // decay is far faster than the exp(-T/72) ledger used by the bound.
    Graph k4 = make_k4();
    GraphView view(k4);
    VertexSet rest = VertexSet::all(4);
    rest.erase(0);
    ResamplingTable table(0, 6);
    const std::uint64_t runs = 100'000;
    for (std::uint64_t budget : {72ULL, 144ULL, 720ULL}) {
        std::uint64_t late_zero = 0;
        for (std::uint64_t i = 0; i < runs; ++i) {
            table.reset(derive_seed(0x15, seed_tag::kSuite, i));
            VertexSample x = sample_vertex(view, rest, 0, table);
            if (x.coin_steps > budget && x.value == 0) ++late_zero;
        }
        double bound = std::exp(-static_cast<double>(budget) / 72.0) /
                       (1.0 - std::exp(-1.0 / 72.0));
        CHECK(static_cast<double>(late_zero) / static_cast<double>(runs) <=
              std::min(1.0, bound));
    }
}

TEST_CASE("enumerator: exact values and the defining tree") {
    Graph k4 = make_k4();
    VertexSet none = VertexSet::none(4);
    Enumeration en = enumerate_vertex_estimator(k4, none, 0, 3);
    CHECK(en.expectation == Rational(7, 8));
    CHECK(en.truncated_mass == 0);  // every branch resolves within d(v) coins

    // Depth 1: value in [1/2, 1] on any instance.
    PrfStream rng(0x21);
    for (int t = 0; t < 10; ++t) {
        Graph g = random_small_graph(rng);
        VertexId v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(g.vertex_count())));
        VertexSet s(g.vertex_count());
        for (VertexId u = 0; u < g.vertex_count(); ++u)
            if (u != v && rng.next_word() % 2) s.insert(u);
        Enumeration e1 = enumerate_vertex_estimator(g, s, v, 1);
        REQUIRE(e1.expectation >= Rational(1, 2));
        REQUIRE(e1.expectation <= 1);
    }
}

TEST_CASE("enumerator agrees with leaf-by-leaf recursion") {
    PrfStream rng(0x22);
    for (int t = 0; t < 20; ++t) {
        Graph g = random_small_graph(rng);
        VertexId v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(g.vertex_count())));
        VertexSet s(g.vertex_count());
        for (VertexId u = 0; u < g.vertex_count(); ++u)
            if (u != v && rng.next_word() % 2) s.insert(u);
        int depth = 1 + static_cast<int>(rng.below(12));
        SimState init;
        init.status.assign(static_cast<std::size_t>(g.edge_count()), 0);
        init.path.push_back(v);
        Rational reference = naive_expectation(g, s, std::move(init), depth);
        Enumeration en = enumerate_vertex_estimator(g, s, v, static_cast<std::uint64_t>(depth));
        REQUIRE(en.expectation == reference);
    }
}

TEST_CASE("enumerator sandwich around the oracle marginal") {
    Graph k4 = make_k4();
    VertexSet rest = VertexSet::all(4);
    rest.erase(0);
    Rational exact = marginal_bruteforce(k4, rest, 0);  // 4/5
    REQUIRE(exact == Rational(4, 5));
    Rational previous_mass;
    bool have_previous = false;
    for (std::uint64_t depth : {4, 8, 16, 32, 64}) {
        Enumeration en = enumerate_vertex_estimator(k4, rest, 0, depth);
        Rational diff = en.expectation - exact;
        if (diff < 0) diff = -diff;
        REQUIRE(diff <= en.truncated_mass);
        if (have_previous) REQUIRE(en.truncated_mass <= previous_mass);
        previous_mass = en.truncated_mass;
        have_previous = true;
    }
    // At depth 64 the tree has essentially resolved.
    Enumeration en = enumerate_vertex_estimator(k4, rest, 0, 64);
    CHECK(en.truncated_mass < Rational(1, 1000));
}

TEST_CASE("enumerator equals the oracle exactly once no branch truncates") {
    PrfStream rng(0x23);
    for (int t = 0; t < 10; ++t) {
        Graph g = random_small_graph(rng);
        VertexId v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(g.vertex_count())));
        VertexSet none(g.vertex_count());
        Enumeration en =
            enumerate_vertex_estimator(g, none, v, static_cast<std::uint64_t>(g.degree(v)));
        REQUIRE(en.truncated_mass == 0);
        REQUIRE(en.expectation == marginal_bruteforce(g, none, v));
    }
}

TEST_CASE("the walk never leaves the query vertex's component") {
    // K4 plus a disjoint triangle; constraining only the triangle leaves
    // the walk at v inside K4 free of pops, so the tree is finite and the
    // enumerator is exact at depth d(v).
    std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                            {4, 5}, {5, 6}, {6, 4}};
    Graph g(7, std::move(edges));
    VertexSet s(7);
    s.insert(4);
    s.insert(5);
    s.insert(6);
    Enumeration en = enumerate_vertex_estimator(g, s, 0, 3);
    CHECK(en.truncated_mass == 0);
    CHECK(en.expectation == marginal_bruteforce(g, s, 0));
    CHECK(en.expectation == Rational(7, 8));
}

TEST_CASE("a budget of d(v) is never hit when S is empty") {
    Graph q3 = make_q3();
    GraphView view(q3);
    VertexSet none(8);
    ResamplingTable table(0, 12);
    for (std::uint64_t i = 0; i < 5000; ++i) {
        table.reset(derive_seed(0x16, seed_tag::kSuite, i));
        VertexSample x = sample_vertex(view, none, 2, table, TruncationPolicy::bounded(3));
        REQUIRE_FALSE(x.truncated);
        REQUIRE(x.coin_steps <= 3);
    }
}

TEST_CASE("enumeration state budget fails loudly") {
    Graph q3 = make_q3();
    VertexSet s = VertexSet::all(8);
    s.erase(7);
    CHECK_THROWS_AS((void)enumerate_vertex_estimator(q3, s, 7, 100, 10, false), DomainError);
    Enumeration forced = enumerate_vertex_estimator(q3, s, 7, 100, 10, true);
    CHECK(forced.budget_hit);
}

TEST_CASE("sample_edge on symmetric instances") {
    Graph c3 = make_c3();
    GraphView view(c3);
    VertexSet s = VertexSet::all(3);
    ResamplingTable table(0, 3);
    std::uint64_t head_b = 0;
    const std::uint64_t n_samples = 20'000;
    ExactDistribution dist = distribution_bruteforce(c3, s);
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        table.reset(derive_seed(0x31, seed_tag::kSuite, i));
        EdgeSample es = sample_edge(view, s, 0, table);
        REQUIRE(es.edge == 0);
        REQUIRE((es.head == c3.edge(0).a || es.head == c3.edge(0).b));
        if (es.head == c3.edge(0).b) ++head_b;
    }
    CHECK(std::abs(static_cast<double>(head_b) / n_samples - 0.5) < 0.015);
}

TEST_CASE("sample_edge matches the oracle on every edge of Q3") {
    Graph q3 = make_q3();
    GraphView view(q3);
    VertexSet s = VertexSet::all(8);
    ResamplingTable table(0, 12);
    const std::uint64_t n_samples = 20'000;
    for (EdgeId e = 0; e < 12; ++e) {
        double exact = edge_marginal_bruteforce(q3, s, e).convert_to<double>();
        std::uint64_t head_b = 0;
        for (std::uint64_t i = 0; i < n_samples; ++i) {
            table.reset(derive_seed(0x35 + static_cast<std::uint64_t>(e), seed_tag::kSuite, i));
            if (sample_edge(view, s, e, table).head == q3.edge(e).b) ++head_b;
        }
        double emp = static_cast<double>(head_b) / static_cast<double>(n_samples);
        double sigma = std::sqrt(exact * (1 - exact) / static_cast<double>(n_samples));
        REQUIRE(std::abs(emp - exact) < 4.5 * sigma);
    }
}

TEST_CASE("sample_edge matches oracle edge marginals on random instances") {
    PrfStream rng(0x32);
    int tested = 0;
    while (tested < 12) {
        Graph g = random_small_graph(rng, 3, 5, 8);
        const int m = g.edge_count();
        std::vector<char> live(static_cast<std::size_t>(m), 1);
        if (tested % 3 == 2) live[rng.below(static_cast<std::uint64_t>(m))] = 0;
        GraphView view(g, live);
        std::vector<EdgeId> live_edges;
        for (EdgeId e = 0; e < m; ++e)
            if (live[static_cast<std::size_t>(e)]) live_edges.push_back(e);
        EdgeId e0 = live_edges[rng.below(live_edges.size())];
        VertexSet s(g.vertex_count());
        for (VertexId u = 0; u < g.vertex_count(); ++u)
            if (rng.next_word() % 2 && view.live_degree(u) > 0) s.insert(u);
        if (omega_empty(view, s)) continue;

        // Oracle on the residual graph: drop dead edges, keep vertex ids.
        std::vector<Edge> residual_edges;
        std::vector<int> new_id(static_cast<std::size_t>(m), -1);
        for (EdgeId e : live_edges) {
            new_id[static_cast<std::size_t>(e)] = static_cast<int>(residual_edges.size());
            residual_edges.push_back(g.edge(e));
        }
        Graph residual(g.vertex_count(), residual_edges);
        double exact =
            edge_marginal_bruteforce(residual, s, new_id[static_cast<std::size_t>(e0)])
                .convert_to<double>();

        ResamplingTable table(0, m);
        std::uint64_t head_b = 0;
        const std::uint64_t n_samples = 20'000;
        for (std::uint64_t i = 0; i < n_samples; ++i) {
            table.reset(derive_seed(0x33 + static_cast<std::uint64_t>(tested) * 1000003, seed_tag::kSuite, i));
            if (sample_edge(view, s, e0, table).head == g.edge(e0).b) ++head_b;
        }
        double emp = static_cast<double>(head_b) / static_cast<double>(n_samples);
        double sigma = std::sqrt(std::max(exact * (1 - exact), 1e-4) / static_cast<double>(n_samples));
        REQUIRE(std::abs(emp - exact) < 5 * sigma + 1e-9);
        ++tested;
    }
}

TEST_CASE("sample_edge preconditions and truncation") {
    Graph p3pl = make_path(3);
    ResamplingTable table(1, 2);
    CHECK_THROWS_AS((void)sample_edge(GraphView(p3pl), VertexSet::all(3), 0, table), DomainError);

    Graph k4 = make_k4();
    GraphView view(k4);
    ResamplingTable t2(1, 6);
    VertexSet s = VertexSet::all(4);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        t2.reset(derive_seed(0x34, seed_tag::kSuite, i));
        EdgeSample es = sample_edge(view, s, 2, t2, TruncationPolicy::bounded(3));
        REQUIRE(es.coin_steps <= 3);
        REQUIRE(es.edge == 2);
        REQUIRE((es.head == k4.edge(2).a || es.head == k4.edge(2).b));
    }
}

TEST_CASE("path-shape invariant holds at every loop iteration") {
    detail::paranoid_walk_checks = true;
    PrfStream rng(0x44);
    ResamplingTable table(0, 16);
    for (const Graph& g : {make_k4(), make_q3(), make_k33()}) {
        const int n = g.vertex_count();
        GraphView view(g);
        for (std::uint64_t i = 0; i < 1000; ++i) {
            VertexId v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
            VertexSet s(n);
            for (VertexId u = 0; u < n; ++u)
                if (u != v && rng.next_word() % 2) s.insert(u);
            table.reset(derive_seed(0x45, seed_tag::kSuite, i));
            CHECK_NOTHROW((void)sample_vertex(view, s, v, table));
            VertexSet s_edge(n);
            for (VertexId u = 0; u < n; ++u)
                if (rng.next_word() % 2) s_edge.insert(u);
            if (omega_empty(g, s_edge)) continue;
            table.reset(derive_seed(0x46, seed_tag::kSuite, i));
            CHECK_NOTHROW((void)sample_edge(
                view, s_edge, static_cast<EdgeId>(rng.below(static_cast<std::uint64_t>(g.edge_count()))),
                table));
        }
    }
    // Residual views as the sequential sampler uses them.
    Graph q3 = make_q3();
    std::vector<char> live(12, 1);
    live[0] = live[7] = 0;
    GraphView view(q3, live);
    VertexSet s(8);
    for (VertexId u : {1, 2, 4, 6}) s.insert(u);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        table.reset(derive_seed(0x47, seed_tag::kSuite, i));
        CHECK_NOTHROW((void)sample_edge(view, s, 3, table));
    }
    detail::paranoid_walk_checks = false;
}

TEST_CASE("coupling equality against the global sampler") {
    // Trivial case: with S empty both sides read the first table row.
    Graph k4 = make_k4();
    for (std::uint64_t i = 0; i < 200; ++i)
        REQUIRE(coupled_completion_check(k4, VertexSet::none(4), 1,
                                         derive_seed(0x41, seed_tag::kSuite, i)));

    PrfStream rng(0x42);
    for (const Graph& g : {make_k4(), make_q3()}) {
        const int n = g.vertex_count();
        for (std::uint64_t i = 0; i < 1500; ++i) {
            VertexId v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
            VertexSet s(n);
            for (VertexId u = 0; u < n; ++u)
                if (u != v && rng.next_word() % 2) s.insert(u);
            REQUIRE(coupled_completion_check(g, s, v, derive_seed(0x43, seed_tag::kSuite, i)));
        }
    }
}

TEST_CASE("the local run never outruns the table entries the PRS run consumes") {
    // Per-edge counters couple the two algorithms: on a shared table the
    // local walk can only reveal a prefix of what the completed global run
    // eventually consumes for each edge.
    PrfStream rng(0x51);
    Graph g = make_k4();
    const int n = 4, m = 6;
    for (std::uint64_t trial = 0; trial < 1500; ++trial) {
        VertexId v = static_cast<VertexId>(rng.below(4));
        VertexSet s(n);
        for (VertexId u = 0; u < n; ++u)
            if (u != v && rng.next_word() % 2) s.insert(u);
        std::uint64_t seed = derive_seed(0x52, seed_tag::kSuite, trial);

        ResamplingTable local_table(seed, m);
        sample_vertex(GraphView(g), s, v, local_table);
        ResamplingTable prs_table(seed, m);
        prs_sample(g, s, prs_table);
        for (EdgeId e = 0; e < m; ++e) {
            std::uint32_t local_used = local_table.next_index(e);
            std::uint32_t global_used = prs_table.next_index(e);
            // The global run draws every edge at least once; beyond that,
            // each resample the local run performed corresponds to a pop
            // the global run must also perform (in some order).
            REQUIRE(global_used >= 1);
            REQUIRE(local_used <= global_used);
        }
    }
}
