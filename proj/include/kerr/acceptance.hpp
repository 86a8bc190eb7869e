#pragma once

#include <string>
#include <vector>

namespace kerr {

struct CriterionResult {
    int id = 0;
    bool passed = false;
    std::string name;
    std::string detail;  // measured values and thresholds
};

/// Runs one acceptance criterion (1..11). Throws std::out_of_range for
/// unknown ids.
CriterionResult run_criterion(int id, int workers = 0);

/// Runs the given criteria (all 11 when empty), printing one
/// "[PASS]/[FAIL] criterion N: ..." line each. Returns 0 iff all pass.
int run_acceptance(const std::vector<int>& ids = {}, int workers = 0);

}  // namespace kerr
