#pragma once

#include <string>
#include <vector>

namespace sfo {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0;
};

// Named verification suites; every statistical one runs with pinned seeds
// and reruns bit-identically.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name);
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, int jobs = 1);

struct BenchRow {
    std::string suite;
    int n = 0;
    int m = 0;
    double eps = 0;
    double seconds = 0;
    std::string result;
};

// Timing rows behind the `bench` subcommand: sink-popping work profiles and
// the fast-sampler scaling ladder.
std::vector<BenchRow> run_bench();

}  // namespace sfo
