#pragma once

#include <cstdint>

#include "sfo/graph.hpp"
#include "sfo/table.hpp"

namespace sfo {

// Which sink gets popped when several are present. The output distribution
// does not depend on the choice; both rules exist so tests can verify that.
enum class SinkRule { kLowestId, kHighestId };

struct RunStats {
    std::uint64_t resample_events = 0;
    std::uint64_t bits_consumed = 0;
};

// Sink-popping: orient every edge from the table, then repeatedly resample
// all edges at a sink in S until none remains. Exact sampler for mu_S;
// requires Omega_S nonempty.
Orientation prs_sample(const Graph& g, const VertexSet& s, ResamplingTable& table,
                       RunStats* stats = nullptr, SinkRule rule = SinkRule::kLowestId);

struct PopProfile {
    std::uint64_t trials = 0;
    double mean_resample_events = 0;
    std::uint64_t min_resample_events = 0;
    std::uint64_t max_resample_events = 0;
    double mean_bits_consumed = 0;
};

// Aggregate RunStats over independent tables derived from one seed.
PopProfile pop_count_profile(const Graph& g, const VertexSet& s, std::uint64_t trials,
                             std::uint64_t seed);

}  // namespace sfo
