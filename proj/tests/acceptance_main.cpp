// Acceptance gate: one pass/fail line per criterion, exit 1 on any failure.
#include <cstdio>

#include "eiszeta/selftest.hpp"

int main() {
    auto results = eiszeta::run_acceptance();
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s criterion %d (%s) [%.1fs] %s\n", r.pass ? "PASS" : "FAIL",
                    r.number, r.name.c_str(), r.seconds, r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES");
    return all ? 0 : 1;
}
