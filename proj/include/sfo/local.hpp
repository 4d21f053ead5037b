#pragma once

#include <cstdint>
#include <vector>

#include "sfo/graph.hpp"
#include "sfo/rational.hpp"
#include "sfo/table.hpp"

namespace sfo {

struct TruncationPolicy {
    static constexpr std::uint64_t kUnbounded = ~std::uint64_t{0};
    std::uint64_t max_coin_steps = kUnbounded;

    static TruncationPolicy unbounded() { return {}; }
    static TruncationPolicy bounded(std::uint64_t steps) {
        if (steps == 0) throw DomainError("bad-policy", "truncation budget must be >= 1");
        return {steps};
    }
    bool finite() const { return max_coin_steps != kUnbounded; }
};

// ceil(72 ln(73/eps)), the coin-step budget that keeps the truncated
// sampler within eps total variation of the exact one.
std::uint64_t truncation_threshold(double eps);

// Per-coin trace in half-units so audits stay integer exact: x2 = 2*X_i
// (path length in vertices after coin i), y2 = 2*Y_i, c2 = 2*c_i in {0,1}.
struct TraceStep {
    std::int64_t x2;
    std::int64_t y2;
    std::int64_t c2;
};

struct TraceRecord {
    std::int64_t x0 = 1;  // path length before the first coin
    std::vector<TraceStep> steps;
    void clear() { steps.clear(); }
};

struct VertexSample {
    int value = 0;  // 1 iff v is not a sink
    std::uint64_t coin_steps = 0;
    bool truncated = false;
};

// The local non-sink indicator for v (v not in S): reveals edge
// orientations along a growing directed path until one of the early
// termination criteria fires. With an unbounded policy the output is an
// exact Bernoulli(mu_S(v not a sink)); a finite policy forces 1 once the
// coin budget is spent.
VertexSample sample_vertex(const GraphView& view, const VertexSet& s, VertexId v,
                           ResamplingTable& table, const TruncationPolicy& policy = {},
                           TraceRecord* trace = nullptr);

struct EdgeSample {
    EdgeId edge = -1;
    VertexId tail = -1;
    VertexId head = -1;
    std::uint64_t coin_steps = 0;
    bool truncated = false;
};

// The local marginal sampler for an edge: like sample_vertex but the path
// starts across e with a fair first draw. Exits return e as last revealed;
// at the singleton all-visited juncture the walk terminates iff the lone
// vertex is outside S and otherwise redraws e and restarts the path.
EdgeSample sample_edge(const GraphView& view, const VertexSet& s, EdgeId e,
                       ResamplingTable& table, const TruncationPolicy& policy = {},
                       TraceRecord* trace = nullptr);

struct Enumeration {
    Rational expectation;     // E[x'_T], an exact dyadic rational
    Rational truncated_mass;  // exact mass of branches alive after T coins
    std::uint64_t state_count = 0;
    bool budget_hit = false;
};

// Deterministic exact expectation of the depth-T truncated sample_vertex:
// the coin decision tree evaluated by dynamic programming over algorithm
// states (same value as leaf-by-leaf enumeration, weight 2^-depth per
// leaf, truncated branches counting as 1). state_budget caps the number of
// distinct states; exceeding it throws unless force is set.
Enumeration enumerate_vertex_estimator(const Graph& g, const VertexSet& s, VertexId v,
                                       std::uint64_t depth,
                                       std::uint64_t state_budget = 10'000'000,
                                       bool force = false);

// Runs sample_vertex and prs_sample against the same resampling table
// (same seed, fresh counters) and checks the coupling equality:
// x = 1  iff  v is not a sink in the PRS output.
bool coupled_completion_check(const Graph& g, const VertexSet& s, VertexId v, std::uint64_t seed);

namespace detail {
// When set, the samplers re-validate the path-shape invariant at every
// loop iteration (P is a directed path of forward-revealed edges and every
// visited edge points at a path vertex). O(m) per step; test use only.
extern thread_local bool paranoid_walk_checks;
}  // namespace detail

}  // namespace sfo
