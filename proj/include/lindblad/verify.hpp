#pragma once

#include <string>
#include <vector>

namespace lindblad::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs every module invariant suite; quick mode shrinks the sample counts.
std::vector<CheckResult> run_all(bool quick);

} // namespace lindblad::verify
