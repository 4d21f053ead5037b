#pragma once

#include <cstdint>
#include <unordered_map>

#include "sfo/graph.hpp"
#include "sfo/local.hpp"
#include "sfo/oracle.hpp"

namespace sfo {

// Canonical-orientation histogram of sampler output.
class EmpiricalDistribution {
public:
    void add(std::uint64_t code) {
        ++counts_[code];
        ++total_;
    }
    std::uint64_t total() const { return total_; }
    const std::unordered_map<std::uint64_t, std::uint64_t>& counts() const { return counts_; }

private:
    std::unordered_map<std::uint64_t, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

// Half the L1 distance between the empirical frequencies and the exact
// distribution, summed over the union of supports.
double tv_distance(const EmpiricalDistribution& emp, const ExactDistribution& exact);

struct ChiSquare {
    double statistic = 0;
    int dof = 0;
    double p_value = 0;
};

// Goodness of fit against a uniform exact distribution. Requires at least
// five expected counts per cell; empirical mass outside the support makes
// the fit fail outright (p = 0).
ChiSquare chi_square_gof(const EmpiricalDistribution& emp, const ExactDistribution& exact);

// d-regular configuration-model multigraph: pair half-edge stubs uniformly
// and redraw whole pairings containing a self-loop. Parallel edges stay.
Graph random_regular_graph(int n, int d, std::uint64_t seed);

// Claim-level audit of a coin trace: the Y bookkeeping must match the
// martingale update rule and the drift X_i - Y_i >= i/4 must hold at every
// index. Structurally broken traces fail.
bool audit_trace(const TraceRecord& trace);

// Standard test graphs.
Graph make_k4();
Graph make_c3();
Graph make_cycle(int n);
Graph make_path(int n);
Graph make_q3();
Graph make_k33();
Graph make_prism();
Graph make_wheel(int rim);          // C_rim plus a hub joined to every rim vertex
Graph make_theta(int strands);      // two vertices joined by `strands` parallel edges

}  // namespace sfo
