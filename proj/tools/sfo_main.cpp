#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "sfo/counting.hpp"
#include "sfo/fastsampler.hpp"
#include "sfo/harness.hpp"
#include "sfo/local.hpp"
#include "sfo/oracle.hpp"
#include "sfo/prs.hpp"
#include "sfo/suites.hpp"
#include "sfo/table.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kDefaultSeed = 1729;  // fixed, so default runs replay

sfo::Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sfo::DomainError("io", "cannot open graph file '" + path + "'");
    return sfo::Graph::parse(in);
}

sfo::VertexSet parse_set(const std::string& spec, int n) {
    if (spec == "all") return sfo::VertexSet::all(n);
    if (spec == "none" || spec.empty()) return sfo::VertexSet::none(n);
    sfo::VertexSet s(n);
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t next = spec.find(',', pos);
        if (next == std::string::npos) next = spec.size();
        std::string tok = spec.substr(pos, next - pos);
        try {
            long v = std::stol(tok);
            if (v < 0 || v >= n) throw sfo::DomainError("bad-set", "vertex out of range in S spec");
            s.insert(static_cast<sfo::VertexId>(v));
        } catch (const std::invalid_argument&) {
            throw sfo::DomainError("bad-set", "malformed S spec token '" + tok + "'");
        }
        pos = next + 1;
    }
    return s;
}

std::vector<sfo::VertexId> parse_order(const std::string& spec) {
    std::vector<sfo::VertexId> order;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t next = spec.find(',', pos);
        if (next == std::string::npos) next = spec.size();
        order.push_back(static_cast<sfo::VertexId>(std::stol(spec.substr(pos, next - pos))));
        pos = next + 1;
    }
    return order;
}

json rat_json(const sfo::Rational& r) {
    return json{{"num", sfo::num_string(r)}, {"den", sfo::den_string(r)}};
}

json base_object(const std::string& command, std::uint64_t seed, const json& config) {
    json out;
    out["version"] = kVersion;
    out["seed"] = seed;
    json cfg = config;
    cfg["command"] = command;
    out["config"] = cfg;
    return out;
}

void emit(const json& out) { std::cout << out.dump() << std::endl; }

json orientation_json(const sfo::Graph& g, const sfo::Orientation& o) {
    json arr = json::array();
    for (sfo::EdgeId e = 0; e < g.edge_count(); ++e)
        arr.push_back(json::array({o.tail(g, e), o.head(e)}));
    return arr;
}

void print_orientation_lines(const sfo::Graph& g, const sfo::Orientation& o) {
    for (sfo::EdgeId e = 0; e < g.edge_count(); ++e)
        std::cout << "e " << o.tail(g, e) << ' ' << o.head(e) << '\n';
}

json count_json(const sfo::CountEstimate& est) {
    json out;
    out["method"] = est.method;
    out["n"] = est.n;
    out["m"] = est.m;
    out["eps"] = est.eps;
    if (std::isinf(est.log2_value))
        out["log2_count"] = nullptr;
    else
        out["log2_count"] = est.log2_value;
    if (est.exact_value) {
        // Integral counts print plainly; the deterministic estimate is an
        // exact rational in general.
        if (sfo::den_string(*est.exact_value) == "1")
            out["count"] = sfo::num_string(*est.exact_value);
        else
            out["count"] = rat_json(*est.exact_value);
    }
    if (!est.exact_factors.empty()) {
        json factors = json::array();
        for (const auto& f : est.exact_factors) factors.push_back(rat_json(f));
        out["factors"] = factors;
        json masses = json::array();
        for (const auto& f : est.factor_masses) masses.push_back(rat_json(f));
        out["factor_masses"] = masses;
    } else if (!est.factor_means.empty()) {
        out["factors"] = est.factor_means;
    }
    if (est.seed) out["seed"] = *est.seed;
    out["order"] = est.order;
    out["truncation_depth"] = est.truncation_depth;
    if (est.replicas) out["replicas"] = est.replicas;
    if (est.inner_samples) out["inner_samples"] = est.inner_samples;
    if (est.trials > 1) out["trials"] = est.trials;
    out["budget_hit"] = est.budget_hit;
    if (est.zero_estimate) out["zero_estimate"] = true;
    return out;
}

json trace_json(const sfo::TraceRecord& trace) {
    json arr = json::array();
    int i = 0;
    for (const auto& st : trace.steps)
        arr.push_back(json{{"step", ++i},
                           {"x", static_cast<double>(st.x2) / 2},
                           {"y", static_cast<double>(st.y2) / 2},
                           {"c", static_cast<double>(st.c2) / 2}});
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"samplers and approximate counters for sink-free orientations"};
    app.require_subcommand(1);

    std::string graph_path, s_spec = "all", method, order_spec, format = "json", op;
    double eps = 0.5, trunc_c = 288.0;
    std::uint64_t seed = kDefaultSeed, samples = 100000, budget = 10'000'000, trials = 1,
                  replicas = 0, inner = 0;
    std::int64_t v_id = -1, e_id = -1, depth = -1;
    std::int64_t scale_num = 1, scale_den = 1;
    int max_edges = 25, max_vertices = 20;
    int jobs = 1;  // SFO_JOBS sets the default worker cap
    if (const char* env_jobs = std::getenv("SFO_JOBS")) jobs = std::max(1, std::atoi(env_jobs));
    bool force = false, want_trace = false, unbounded = false;
    std::vector<std::string> suites;

    auto* count = app.add_subcommand("count", "approximately or exactly count SFOs");
    count->add_option("graph", graph_path)->required();
    count->add_option("--method", method)->check(CLI::IsMember({"det", "fpras", "oracle"}))->required();
    count->add_option("--eps", eps);
    count->add_option("--seed", seed);
    count->add_option("--trials", trials);
    count->add_option("--order", order_spec);
    count->add_option("--budget", budget);
    count->add_option("--inner", inner);
    count->add_option("--replicas", replicas);
    count->add_flag("--force", force);

    auto* sample = app.add_subcommand("sample", "draw an S-sink-free orientation");
    sample->add_option("graph", graph_path)->required();
    sample->add_option("--method", method)->check(CLI::IsMember({"prs", "fast"}))->required();
    sample->add_option("--s", s_spec);
    sample->add_option("--eps", eps);
    sample->add_option("--seed", seed);
    sample->add_option("--trunc-c", trunc_c);
    sample->add_flag("--unbounded", unbounded);
    sample->add_flag("--trace", want_trace);
    sample->add_option("--format", format)->check(CLI::IsMember({"json", "lines"}));

    auto* marginal = app.add_subcommand("marginal", "estimate a local marginal");
    marginal->add_option("graph", graph_path)->required();
    marginal->add_option("--method", method)->check(CLI::IsMember({"enum", "mc"}))->required();
    marginal->add_option("--v", v_id);
    marginal->add_option("--edge", e_id);
    marginal->add_option("--s", s_spec);
    marginal->add_option("--depth", depth);
    marginal->add_option("--eps", eps);
    marginal->add_option("--samples", samples);
    marginal->add_option("--seed", seed);
    marginal->add_option("--budget", budget);
    marginal->add_flag("--force", force);
    marginal->add_flag("--trace", want_trace);
    marginal->add_option("--format", format)->check(CLI::IsMember({"json", "lines"}));

    auto* oracle = app.add_subcommand("oracle", "exact ground truth");
    oracle->add_option("graph", graph_path)->required();
    oracle->add_option("--op", op)
        ->check(CLI::IsMember({"count", "marginal", "edge-marginal", "distribution", "qpoly",
                               "shearer", "pjqj", "omega-empty"}))
        ->required();
    oracle->add_option("--s", s_spec);
    oracle->add_option("--j", s_spec);
    oracle->add_option("--v", v_id);
    oracle->add_option("--edge", e_id);
    oracle->add_option("--scale-num", scale_num);
    oracle->add_option("--scale-den", scale_den);
    oracle->add_option("--max-edges", max_edges);
    oracle->add_option("--max-vertices", max_vertices);

    auto* verify = app.add_subcommand("verify", "run named verification suites");
    verify->add_option("--suite", suites);
    verify->add_option("--jobs", jobs);
    verify->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    auto* bench = app.add_subcommand("bench", "timing harness, CSV output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (count->parsed()) {
            sfo::Graph g = load_graph(graph_path);
            json cfg{{"graph", graph_path}, {"method", method}, {"eps", eps}};
            json out = base_object("count", seed, cfg);
            if (method == "oracle") {
                sfo::OracleLimits lim;
                out["n"] = g.vertex_count();
                out["m"] = g.edge_count();
                out["method"] = "oracle";
                sfo::BigInt c = sfo::count_sfo_bruteforce(g, sfo::VertexSet::all(g.vertex_count()), lim);
                out["count"] = c.str();
                out["log2_count"] = c == 0 ? json(nullptr) : json(sfo::log2_big(c));
            } else if (method == "det") {
                sfo::DeterministicOptions opt;
                opt.state_budget = budget;
                opt.force = force;
                if (!order_spec.empty()) opt.order = parse_order(order_spec);
                out.update(count_json(sfo::count_deterministic(g, eps, opt)));
            } else {
                sfo::FprasOptions opt;
                opt.trials = trials;
                opt.inner_samples = inner;
                opt.replicas = replicas;
                if (!order_spec.empty()) opt.order = parse_order(order_spec);
                out.update(count_json(sfo::count_fpras(g, eps, seed, opt)));
            }
            emit(out);
        } else if (sample->parsed()) {
            sfo::Graph g = load_graph(graph_path);
            json cfg{{"graph", graph_path}, {"method", method}, {"s", s_spec}};
            if (method == "fast") cfg["eps"] = eps;
            json out = base_object("sample", seed, cfg);
            sfo::Orientation sigma;
            if (method == "prs") {
                sfo::VertexSet s = parse_set(s_spec, g.vertex_count());
                sfo::ResamplingTable table(seed, g.edge_count());
                sfo::RunStats stats;
                sigma = sfo::prs_sample(g, s, table, &stats);
                out["stats"] = json{{"resample_events", stats.resample_events},
                                    {"bits_consumed", stats.bits_consumed}};
            } else {
                sfo::FastOptions opt;
                opt.trunc_c = trunc_c;
                opt.unbounded = unbounded;
                std::vector<sfo::ScheduleEvent> events;
                sigma = sfo::sample_sfo_fast(g, eps, seed, opt, want_trace ? &events : nullptr);
                if (want_trace) {
                    json tr = json::array();
                    for (const auto& ev : events)
                        tr.push_back(json{{"focus", ev.focus},
                                          {"edge", ev.edge},
                                          {"tail", ev.tail},
                                          {"head", ev.head},
                                          {"forced", ev.forced},
                                          {"truncated", ev.truncated}});
                    out["trace"] = tr;
                }
            }
            if (format == "lines") {
                if (want_trace && out.contains("trace"))
                    for (const auto& ev : out["trace"])
                        std::printf("t %d %d %d %d %d %d\n", ev["focus"].get<int>(),
                                    ev["edge"].get<int>(), ev["tail"].get<int>(),
                                    ev["head"].get<int>(), ev["forced"].get<bool>() ? 1 : 0,
                                    ev["truncated"].get<bool>() ? 1 : 0);
                print_orientation_lines(g, sigma);
            } else {
                out["orientation"] = orientation_json(g, sigma);
                emit(out);
            }
        } else if (marginal->parsed()) {
            sfo::Graph g = load_graph(graph_path);
            sfo::VertexSet s = parse_set(s_spec, g.vertex_count());
            json cfg{{"graph", graph_path}, {"method", method}, {"s", s_spec}};
            json out = base_object("marginal", seed, cfg);
            if (method == "enum") {
                if (v_id < 0) throw sfo::DomainError("usage-v", "enum backend needs --v");
                std::uint64_t t = depth > 0 ? static_cast<std::uint64_t>(depth)
                                            : sfo::truncation_threshold(eps);
                sfo::Enumeration en = sfo::enumerate_vertex_estimator(
                    g, s, static_cast<sfo::VertexId>(v_id), t, budget, force);
                out["num"] = sfo::num_string(en.expectation);
                out["den"] = sfo::den_string(en.expectation);
                out["truncated_mass"] = rat_json(en.truncated_mass);
                out["depth"] = t;
                out["states"] = en.state_count;
                out["budget_hit"] = en.budget_hit;
            } else {
                sfo::TruncationPolicy policy = sfo::TruncationPolicy::unbounded();
                if (depth > 0)
                    policy = sfo::TruncationPolicy::bounded(static_cast<std::uint64_t>(depth));
                else if (marginal->count("--eps"))
                    policy = sfo::TruncationPolicy::bounded(sfo::truncation_threshold(eps));
                sfo::ResamplingTable table(0, g.edge_count());
                sfo::GraphView view(g);
                sfo::TraceRecord trace;
                if (v_id >= 0) {
                    std::uint64_t hits = 0;
                    for (std::uint64_t i = 0; i < samples; ++i) {
                        table.reset(sfo::derive_seed(seed, sfo::seed_tag::kSuite, i));
                        hits += static_cast<std::uint64_t>(
                            sfo::sample_vertex(view, s, static_cast<sfo::VertexId>(v_id), table,
                                               policy, want_trace && i == 0 ? &trace : nullptr)
                                .value);
                    }
                    out["estimate"] = static_cast<double>(hits) / static_cast<double>(samples);
                    out["samples"] = samples;
                } else if (e_id >= 0) {
                    std::uint64_t head_b = 0;
                    for (std::uint64_t i = 0; i < samples; ++i) {
                        table.reset(sfo::derive_seed(seed, sfo::seed_tag::kSuite, i));
                        sfo::EdgeSample es =
                            sfo::sample_edge(view, s, static_cast<sfo::EdgeId>(e_id), table,
                                             policy, want_trace && i == 0 ? &trace : nullptr);
                        if (es.head == g.edge(static_cast<sfo::EdgeId>(e_id)).b) ++head_b;
                    }
                    out["p_head_b"] = static_cast<double>(head_b) / static_cast<double>(samples);
                    out["samples"] = samples;
                } else {
                    throw sfo::DomainError("usage-v", "mc backend needs --v or --edge");
                }
                if (want_trace) out["trace"] = trace_json(trace);
            }
            if (format == "lines") {
                // Line-delimited trace records: step, X, Y, c.
                if (out.contains("trace"))
                    for (const auto& st : out["trace"])
                        std::printf("t %d %g %g %g\n", st["step"].get<int>(),
                                    st["x"].get<double>(), st["y"].get<double>(),
                                    st["c"].get<double>());
                if (out.contains("estimate"))
                    std::printf("estimate %.10g\n", out["estimate"].get<double>());
                else if (out.contains("p_head_b"))
                    std::printf("p_head_b %.10g\n", out["p_head_b"].get<double>());
                else
                    std::printf("value %s/%s\n", out["num"].get<std::string>().c_str(),
                                out["den"].get<std::string>().c_str());
            } else {
                emit(out);
            }
        } else if (oracle->parsed()) {
            sfo::Graph g = load_graph(graph_path);
            sfo::OracleLimits lim{max_edges, max_vertices};
            sfo::VertexSet s = parse_set(s_spec, g.vertex_count());
            json cfg{{"graph", graph_path}, {"op", op}, {"s", s_spec}};
            json out = base_object("oracle", seed, cfg);
            if (op == "count") {
                out["count"] = sfo::count_sfo_bruteforce(g, s, lim).str();
            } else if (op == "marginal") {
                if (v_id < 0) throw sfo::DomainError("usage-v", "marginal needs --v");
                out.update(rat_json(
                    sfo::marginal_bruteforce(g, s, static_cast<sfo::VertexId>(v_id), lim)));
            } else if (op == "edge-marginal") {
                if (e_id < 0) throw sfo::DomainError("usage-v", "edge-marginal needs --edge");
                out.update(rat_json(
                    sfo::edge_marginal_bruteforce(g, s, static_cast<sfo::EdgeId>(e_id), lim)));
            } else if (op == "distribution") {
                sfo::ExactDistribution dist = sfo::distribution_bruteforce(g, s, lim);
                out["support_size"] = dist.support.size();
                out["mass_each"] = rat_json(dist.mass_each);
                out["support"] = dist.support;
            } else if (op == "qpoly") {
                sfo::WeightVector w = sfo::scaled_weights(
                    sfo::sfo_weights(g), sfo::Rational(scale_num, scale_den));
                out.update(rat_json(sfo::q_poly(g, w, s)));
            } else if (op == "shearer") {
                sfo::WeightVector w = sfo::scaled_weights(
                    sfo::sfo_weights(g), sfo::Rational(scale_num, scale_den));
                out["in_shearer_region"] = sfo::shearer_membership(g, w, lim);
            } else if (op == "pjqj") {
                out["pj_equals_qj"] = sfo::verify_pj_qj(g, s, lim);
            } else {
                out["omega_empty"] = sfo::omega_empty(g, s);
            }
            emit(out);
        } else if (verify->parsed()) {
            std::vector<std::string> names = suites;
            if (names.empty() || (names.size() == 1 && names[0] == "all"))
                names = sfo::suite_names();
            std::vector<sfo::SuiteResult> results = sfo::run_suites(names, jobs);
            bool all_pass = true;
            json arr = json::array();
            for (const auto& res : results) {
                all_pass = all_pass && res.pass;
                if (format == "json") {
                    arr.push_back(json{{"suite", res.name},
                                       {"pass", res.pass},
                                       {"seconds", res.seconds},
                                       {"details", res.details}});
                } else {
                    std::printf("[%s] %-16s (%.2fs) %s\n", res.pass ? "PASS" : "FAIL",
                                res.name.c_str(), res.seconds, res.details.c_str());
                }
            }
            if (format == "json") {
                json out = base_object("verify", seed, json{{"jobs", jobs}});
                out["suites"] = arr;
                out["pass"] = all_pass;
                emit(out);
            }
            return all_pass ? 0 : 1;
        } else if (bench->parsed()) {
            std::printf("suite,n,m,eps,seconds,result\n");
            for (const sfo::BenchRow& row : sfo::run_bench())
                std::printf("%s,%d,%d,%g,%.6f,%s\n", row.suite.c_str(), row.n, row.m, row.eps,
                            row.seconds, row.result.c_str());
        }
    } catch (const sfo::DomainError& e) {
        json out;
        out["version"] = kVersion;
        out["error"] = json{{"code", e.code()}, {"message", e.what()}};
        emit(out);
        return 1;
    } catch (const std::exception& e) {
        json out;
        out["version"] = kVersion;
        out["error"] = json{{"code", "internal"}, {"message", e.what()}};
        emit(out);
        return 1;
    }
    return 0;
}
