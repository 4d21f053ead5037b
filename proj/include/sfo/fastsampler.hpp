#pragma once

#include <cstdint>
#include <vector>

#include "sfo/graph.hpp"
#include "sfo/local.hpp"

namespace sfo {

struct FastOptions {
    double trunc_c = 288.0;  // coin budget per edge sample: ceil(C ln(m/eps))
    bool unbounded = false;  // exact conditional chain, for verification
};

struct ScheduleEvent {
    VertexId focus;
    EdgeId edge;
    VertexId tail;
    VertexId head;
    bool forced;
    bool truncated;
};

// Near-linear approximate SFO sampler: commits edge orientations one at a
// time from truncated local edge samples, keeping the focus on one vertex
// of S until it is released, forcing the leftover edge when the focus
// degree hits 1, and filling the leftover edges with fair bits once S is
// exhausted. Output is within eps total variation of uniform over all
// sink-free orientations. Requires min degree >= 3.
Orientation sample_sfo_fast(const Graph& g, double eps, std::uint64_t seed,
                            const FastOptions& opt = {},
                            std::vector<ScheduleEvent>* trace = nullptr);

// Same run with the full event log.
std::vector<ScheduleEvent> focus_schedule_trace(const Graph& g, double eps, std::uint64_t seed,
                                                const FastOptions& opt = {});

}  // namespace sfo
