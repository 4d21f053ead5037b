#pragma once

#include <cstdint>
#include <vector>

#include "sfo/graph.hpp"
#include "sfo/rational.hpp"

namespace sfo {

// Brute-force caps are configuration; the defaults keep every oracle call
// well under a second.
struct OracleLimits {
    int max_edges = 25;
    int max_vertices = 20;
};

// |Omega_S| by full enumeration of the 2^m orientations.
BigInt count_sfo_bruteforce(const Graph& g, const VertexSet& s, const OracleLimits& lim = {});

// |Omega_{S+v}| / |Omega_S| as an exact rational. Requires v not in S and
// Omega_S nonempty.
Rational marginal_bruteforce(const Graph& g, const VertexSet& s, VertexId v,
                             const OracleLimits& lim = {});

// Probability under mu_S that edge e is oriented a -> b (head = b).
Rational edge_marginal_bruteforce(const Graph& g, const VertexSet& s, EdgeId e,
                                  const OracleLimits& lim = {});

// Uniform distribution over Omega_S; support holds canonical orientation
// codes in ascending order.
struct ExactDistribution {
    std::vector<std::uint64_t> support;
    Rational mass_each;
};
ExactDistribution distribution_bruteforce(const Graph& g, const VertexSet& s,
                                          const OracleLimits& lim = {});

// |Omega_S| for every S simultaneously, indexed by the vertex-subset mask.
// Needs n <= max_vertices and m <= max_edges.
std::vector<std::uint64_t> sfo_counts_by_sinkset(const Graph& g, const OracleLimits& lim = {});

using WeightVector = std::vector<Rational>;

// The SFO bad-event probabilities p_u = 2^{-d(u)}.
WeightVector sfo_weights(const Graph& g);
WeightVector scaled_weights(const WeightVector& w, const Rational& factor);

// q_J = sum over independent I subseteq J of (-1)^|I| prod w_u, via the
// recurrence q_J = q_{J \ {u}} - w_u q_{J \ Gamma+(u)} with the pivot u
// always the lowest-indexed vertex of J.
Rational q_poly(const Graph& g, const WeightVector& w, const VertexSet& j);

// True iff q_J(-w) > 0 for every J subseteq V.
bool shearer_membership(const Graph& g, const WeightVector& w, const OracleLimits& lim = {});

// Exact check of |Omega_J| / 2^m == q_J at the SFO weights; requires
// min degree >= 3.
bool verify_pj_qj(const Graph& g, const VertexSet& j, const OracleLimits& lim = {});

}  // namespace sfo
