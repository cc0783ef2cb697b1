// Built-in invariant battery behind `oamris selftest`.
#pragma once

#include <string>
#include <vector>

namespace oamris {

struct SelftestResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<SelftestResult> selftest_checks();

// Runs every check and prints one pass/fail line each; true iff all pass.
bool run_selftest();

}  // namespace oamris
