// Acceptance suite: one line per criterion, exit 0 iff everything passes.

#include <cstdio>
#include <string>
#include <vector>

#include "sfo/suites.hpp"

int main() {
    struct Criterion {
        int number;
        const char* label;
        std::vector<std::string> suites;
    };
    const std::vector<Criterion> criteria{
        {1, "PRS exactness", {"prs-exactness"}},
        {2, "local-marginal exactness", {"local-marginals"}},
        {3, "coupling identity", {"coupling"}},
        {4, "trace drift", {"trace-drift"}},
        {5, "marginal lower bound sweep", {"lemma41"}},
        {6, "exact identities", {"pj-qj", "wheel-slack"}},
        {7, "deterministic counter", {"det-counter"}},
        {8, "fpras", {"fpras"}},
        {9, "fast sampler TV", {"fast-tv"}},
        {10, "scaling", {"scaling"}},
        {11, "degenerate handling", {"degenerate"}},
    };

    bool all_pass = true;
    for (const Criterion& c : criteria) {
        bool pass = true;
        std::string details;
        double seconds = 0;
        for (const std::string& name : c.suites) {
            sfo::SuiteResult r = sfo::run_suite(name);
            pass = pass && r.pass;
            seconds += r.seconds;
            if (!details.empty()) details += " | ";
            details += r.details;
        }
        all_pass = all_pass && pass;
        std::printf("criterion %2d [%s]: %s (%.1fs) %s\n", c.number, c.label,
                    pass ? "PASS" : "FAIL", seconds, details.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
