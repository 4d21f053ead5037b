#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfo/graph.hpp"
#include "sfo/local.hpp"
#include "sfo/rational.hpp"

namespace sfo {

struct CountEstimate {
    std::string method;
    int n = 0;
    int m = 0;
    double eps = 0;
    double log2_value = 0;  // -inf when the estimate is zero
    std::optional<Rational> exact_value;
    std::vector<Rational> exact_factors;   // deterministic path only
    std::vector<Rational> factor_masses;   // truncated mass per factor
    std::vector<double> factor_means;      // fpras diagnostics
    std::optional<std::uint64_t> seed;
    std::vector<VertexId> order;
    std::uint64_t truncation_depth = 0;
    std::uint64_t replicas = 0;
    std::uint64_t inner_samples = 0;
    std::uint64_t trials = 1;
    bool budget_hit = false;
    bool zero_estimate = false;
};

// The telescoping vertex order: input order unless overridden. An override
// must be a permutation of 0..n-1.
std::vector<VertexId> telescoping_order(const Graph& g,
                                        const std::vector<VertexId>* override_order = nullptr);

struct DeterministicOptions {
    std::uint64_t state_budget = 10'000'000;
    bool force = false;
    std::vector<VertexId> order;  // empty = input order
};

// Deterministic approximate counter: per telescoping factor, the exact
// expectation of the truncated local sampler at depth ceil(72 ln(292 n/eps)),
// multiplied out with 2^m as an exact rational. Requires min degree >= 3.
CountEstimate count_deterministic(const Graph& g, double eps,
                                  const DeterministicOptions& opt = {});

struct FprasOptions {
    std::uint64_t inner_samples = 0;  // 0 = n, the proof value
    std::uint64_t replicas = 0;       // 0 = ceil(36*54/eps^2)
    std::uint64_t trials = 1;         // median wrapper; 1 = bare 3/4 contract
    std::vector<VertexId> order;
};

// Randomised approximate counter: mean over N replicas of the product of
// per-vertex truncated-sampler averages. eps-approximation with
// probability >= 3/4 at the default knobs.
CountEstimate count_fpras(const Graph& g, double eps, std::uint64_t seed,
                          const FprasOptions& opt = {});

}  // namespace sfo
