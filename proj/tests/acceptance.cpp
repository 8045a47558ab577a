#include "galoiskit/verify.hpp"

#include <cstdio>
#include <functional>
#include <vector>

namespace {
    struct Criterion {
        int number;
        double limit_seconds;
        std::function<gk::CheckResult()> run;
    };
}

int main() {
    const std::vector<Criterion> criteria = {
        {1, 1.0, [] { return gk::check_malcev_identities(); }},
        {2, 60.0, [] { return gk::check_characteristic_matrices(); }},
        {3, 60.0, [] { return gk::check_minor_preservation(); }},
        {4, 1.0, [] { return gk::check_trivial_constraint_fixtures(); }},
        {5, 30.0, [] { return gk::check_composite_schemes(); }},
        {6, 60.0, [] { return gk::check_cluster_lemmas(); }},
        {7, 120.0, [] { return gk::check_round_trips(); }},
        {8, 60.0, [] { return gk::check_separations(); }},
        {9, 30.0, [] { return gk::check_relation_cluster_oracle(); }},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const gk::CheckResult r = c.run();
        const bool in_time = r.seconds < c.limit_seconds;
        const bool ok = r.passed && in_time;
        failures += ok ? 0 : 1;
        std::printf("criterion %d: %s %s (%.3f s, limit %.0f s%s): %s\n", c.number, ok ? "PASS" : "FAIL",
                    r.name.c_str(), r.seconds, c.limit_seconds, in_time ? "" : ", over time", r.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
