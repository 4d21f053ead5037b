#include "sfo/counting.hpp"

#include <algorithm>
#include <cmath>

namespace sfo {

std::vector<VertexId> telescoping_order(const Graph& g, const std::vector<VertexId>* override_order) {
    const int n = g.vertex_count();
    if (override_order == nullptr || override_order->empty()) {
        std::vector<VertexId> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        return order;
    }
    if (static_cast<int>(override_order->size()) != n)
        throw DomainError("bad-order", "order override must list every vertex once");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (VertexId v : *override_order) {
        if (v < 0 || v >= n) throw DomainError("bad-order", "order entry out of range");
        if (seen[static_cast<std::size_t>(v)]) throw DomainError("bad-order", "repeated vertex in order");
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return *override_order;
}

namespace {

void check_gates(const Graph& g, double eps) {
    if (g.vertex_count() == 0) throw DomainError("empty-graph", "empty graph");
    if (g.min_degree() < 3) throw DomainError("min-degree", "counting needs min degree >= 3");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps-range", "eps must lie in (0,1)");
}

}  // namespace

CountEstimate count_deterministic(const Graph& g, double eps, const DeterministicOptions& opt) {
    check_gates(g, eps);
    const int n = g.vertex_count();
    const int m = g.edge_count();
    const std::uint64_t depth =
        ceil_guarded(72.0 * std::log(292.0 * static_cast<double>(n) / eps));

    CountEstimate est;
    est.method = "deterministic";
    est.n = n;
    est.m = m;
    est.eps = eps;
    est.truncation_depth = depth;
    est.order = telescoping_order(g, opt.order.empty() ? nullptr : &opt.order);

    VertexSet prefix(n);
    Rational product(1);
    for (VertexId v : est.order) {
        Enumeration en = enumerate_vertex_estimator(g, prefix, v, depth, opt.state_budget, opt.force);
        est.exact_factors.push_back(en.expectation);
        est.factor_masses.push_back(en.truncated_mass);
        est.budget_hit = est.budget_hit || en.budget_hit;
        product *= en.expectation;
        prefix.insert(v);
    }
    Rational value = Rational(pow2(static_cast<unsigned>(m))) * product;
    est.exact_value = value;
    est.log2_value = log2_rational(value);
    est.zero_estimate = value == 0;
    return est;
}

CountEstimate count_fpras(const Graph& g, double eps, std::uint64_t seed, const FprasOptions& opt) {
    check_gates(g, eps);
    const int n = g.vertex_count();
    const int m = g.edge_count();
    const std::uint64_t depth =
        ceil_guarded(72.0 * std::log(73.0 * 12.0 * static_cast<double>(n) / eps));
    const std::uint64_t inner = opt.inner_samples > 0 ? opt.inner_samples
                                                      : static_cast<std::uint64_t>(n);
    const std::uint64_t replicas =
        opt.replicas > 0 ? opt.replicas : ceil_guarded(36.0 * 54.0 / (eps * eps));
    const std::uint64_t trials = std::max<std::uint64_t>(1, opt.trials);

    CountEstimate est;
    est.method = "fpras";
    est.n = n;
    est.m = m;
    est.eps = eps;
    est.seed = seed;
    est.truncation_depth = depth;
    est.replicas = replicas;
    est.inner_samples = inner;
    est.trials = trials;
    est.order = telescoping_order(g, opt.order.empty() ? nullptr : &opt.order);
    est.factor_means.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<VertexSet> prefixes;
    prefixes.reserve(static_cast<std::size_t>(n));
    {
        VertexSet prefix(n);
        for (VertexId v : est.order) {
            prefixes.push_back(prefix);
            prefix.insert(v);
        }
    }

    const TruncationPolicy policy = TruncationPolicy::bounded(depth);
    ResamplingTable table(0, m);
    GraphView view(g);
    std::vector<double> trial_values;
    trial_values.reserve(static_cast<std::size_t>(trials));
    double factor_norm = 0;

    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(seed, seed_tag::kFprasTrial, t);
        double sum_products = 0;
        for (std::uint64_t r = 0; r < replicas; ++r) {
            double product = 1;
            for (int i = 0; i < n; ++i) {
                VertexId v = est.order[static_cast<std::size_t>(i)];
                std::uint64_t hits = 0;
                for (std::uint64_t k = 0; k < inner; ++k) {
                    table.reset(derive_seed(trial_seed, seed_tag::kFprasRun,
                                            (r * static_cast<std::uint64_t>(n) +
                                             static_cast<std::uint64_t>(i)) *
                                                    inner +
                                                k));
                    hits += static_cast<std::uint64_t>(
                        sample_vertex(view, prefixes[static_cast<std::size_t>(i)], v, table, policy)
                            .value);
                }
                double mean = static_cast<double>(hits) / static_cast<double>(inner);
                est.factor_means[static_cast<std::size_t>(i)] += mean;
                product *= mean;
            }
            factor_norm += 1;
            sum_products += product;
        }
        trial_values.push_back(sum_products / static_cast<double>(replicas));
    }
    for (double& f : est.factor_means) f /= factor_norm;

    std::sort(trial_values.begin(), trial_values.end());
    double x_hat = trial_values[trial_values.size() / 2];
    if (trial_values.size() % 2 == 0)
        x_hat = 0.5 * (x_hat + trial_values[trial_values.size() / 2 - 1]);

    est.zero_estimate = x_hat == 0;
    est.log2_value = est.zero_estimate ? -std::numeric_limits<double>::infinity()
                                       : static_cast<double>(m) + std::log2(x_hat);
    return est;
}

}  // namespace sfo
