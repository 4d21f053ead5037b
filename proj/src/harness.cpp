#include "sfo/harness.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "sfo/table.hpp"

namespace sfo {

double tv_distance(const EmpiricalDistribution& emp, const ExactDistribution& exact) {
    if (emp.total() == 0) throw DomainError("empty-sample", "empirical distribution has no mass");
    const double total = static_cast<double>(emp.total());
    const double p = exact.mass_each.convert_to<double>();
    double dist = 0;
    std::uint64_t seen_mass = 0;
    for (std::uint64_t code : exact.support) {
        auto it = emp.counts().find(code);
        std::uint64_t c = it == emp.counts().end() ? 0 : it->second;
        seen_mass += c;
        dist += std::abs(static_cast<double>(c) / total - p);
    }
    // Empirical mass outside the exact support.
    dist += static_cast<double>(emp.total() - seen_mass) / total;
    return dist / 2;
}

ChiSquare chi_square_gof(const EmpiricalDistribution& emp, const ExactDistribution& exact) {
    if (emp.total() == 0) throw DomainError("empty-sample", "empirical distribution has no mass");
    const auto cells = exact.support.size();
    if (cells < 2) throw DomainError("chi2-cells", "need at least two cells");
    const double expected = static_cast<double>(emp.total()) / static_cast<double>(cells);
    if (expected < 5.0) throw DomainError("chi2-cells", "expected count below 5 per cell");

    ChiSquare out;
    out.dof = static_cast<int>(cells) - 1;
    std::uint64_t seen_mass = 0;
    for (std::uint64_t code : exact.support) {
        auto it = emp.counts().find(code);
        std::uint64_t c = it == emp.counts().end() ? 0 : it->second;
        seen_mass += c;
        const double d = static_cast<double>(c) - expected;
        out.statistic += d * d / expected;
    }
    if (seen_mass != emp.total()) {
        // Mass on impossible outcomes: the sampler is wrong, full stop.
        out.statistic = std::numeric_limits<double>::infinity();
        out.p_value = 0;
        return out;
    }
    boost::math::chi_squared dist(out.dof);
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
    return out;
}

Graph random_regular_graph(int n, int d, std::uint64_t seed) {
    if (d < 3) throw DomainError("bad-degree", "configuration model used with d >= 3 here");
    if (n < 2 || (static_cast<long long>(n) * d) % 2 != 0)
        throw DomainError("odd-stubs", "n*d must be even");
    const std::size_t stubs_count = static_cast<std::size_t>(n) * static_cast<std::size_t>(d);
    std::vector<VertexId> stubs(stubs_count);

    for (std::uint64_t attempt = 0;; ++attempt) {
        std::size_t k = 0;
        for (VertexId u = 0; u < n; ++u)
            for (int j = 0; j < d; ++j) stubs[k++] = u;
        PrfStream rng(derive_seed(seed, seed_tag::kGenerator, attempt));
        // Fisher-Yates, PRF-driven for cross-platform determinism.
        for (std::size_t i = stubs_count - 1; i > 0; --i)
            std::swap(stubs[i], stubs[rng.below(i + 1)]);
        bool loop_free = true;
        for (std::size_t i = 0; i < stubs_count; i += 2) {
            if (stubs[i] == stubs[i + 1]) {
                loop_free = false;
                break;
            }
        }
        if (!loop_free) continue;
        std::vector<Edge> edges;
        edges.reserve(stubs_count / 2);
        for (std::size_t i = 0; i < stubs_count; i += 2) edges.push_back({stubs[i], stubs[i + 1]});
        return Graph(n, std::move(edges));
    }
}

bool audit_trace(const TraceRecord& trace) {
    if (trace.x0 < 1) return false;
    std::int64_t prev_x2 = 2 * trace.x0;
    std::int64_t prev_y2 = 2 * trace.x0;  // Y_0 = X_0
    std::int64_t i = 0;
    for (const TraceStep& st : trace.steps) {
        ++i;
        if (st.c2 != 0 && st.c2 != 1) return false;
        std::int64_t dx2 = st.x2 - prev_x2;
        if (dx2 < -2 || dx2 > 2 || dx2 % 2 != 0) return false;
        if (st.y2 != prev_y2 + dx2 - st.c2) return false;
        // Claim-level drift: X_i - Y_i >= i/4, i.e. 2(x2-y2) >= i.
        if (2 * (st.x2 - st.y2) < i) return false;
        prev_x2 = st.x2;
        prev_y2 = st.y2;
    }
    return true;
}

Graph make_k4() {
    return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

Graph make_c3() { return make_cycle(3); }

Graph make_cycle(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return Graph(n, std::move(edges));
}

Graph make_path(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Graph(n, std::move(edges));
}

Graph make_q3() {
    std::vector<Edge> edges;
    for (VertexId v = 0; v < 8; ++v)
        for (int bit : {1, 2, 4})
            if (v < (v ^ bit)) edges.push_back({v, v ^ bit});
    return Graph(8, std::move(edges));
}

Graph make_k33() {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < 3; ++u)
        for (VertexId v = 3; v < 6; ++v) edges.push_back({u, v});
    return Graph(6, std::move(edges));
}

Graph make_prism() {
    return Graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
}

Graph make_wheel(int rim) {
    std::vector<Edge> edges;
    for (int i = 0; i < rim; ++i) edges.push_back({i, (i + 1) % rim});
    for (int i = 0; i < rim; ++i) edges.push_back({i, rim});
    return Graph(rim + 1, std::move(edges));
}

Graph make_theta(int strands) {
    std::vector<Edge> edges;
    for (int i = 0; i < strands; ++i) edges.push_back({0, 1});
    return Graph(2, std::move(edges));
}

}  // namespace sfo
