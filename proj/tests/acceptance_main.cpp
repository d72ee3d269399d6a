// Acceptance suite runner: one pass/fail line per criterion, exit code is
// the number of failed criteria. The same checks back the CLI `selftest`.
#include <cstdio>

#include "codiag/acceptance.hpp"

int main() {
    const auto criteria = codiag::run_acceptance(7);
    int failures = 0;
    for (const auto& c : criteria) {
        std::printf("[%2d] %s  %s\n", c.id, c.pass ? "PASS" : "FAIL", c.name.c_str());
        if (!c.detail.empty()) std::printf("     %s\n", c.detail.c_str());
        if (!c.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
