#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace infotherm {

struct CheckResult {
    std::string name;
    bool pass;
    double worst;     // largest scaled residual (or most negative slack) observed
    double tolerance; // the gate it was held to
    std::string detail;
};

struct SelfcheckOptions {
    std::uint64_t seed = 20260822;
    // Per-check tolerance overrides by name; values must be > 0.
    std::vector<std::pair<std::string, double>> tolerance_overrides;
};

// Runs every module's invariant sweep (randomized sweeps are seeded and
// deterministic).  Results come back in a fixed order.
std::vector<CheckResult> run_selfchecks(const SelfcheckOptions& opts);

} // namespace infotherm
