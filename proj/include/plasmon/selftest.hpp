#pragma once

#include <string>
#include <vector>

namespace plasmon {

struct CheckResult {
    std::string name;
    bool passed;
    double value;      // the measured quantity
    double threshold;  // bound it was compared against
};

/// Fast invariant suite behind the `selftest` command.
std::vector<CheckResult> run_selftest();

}  // namespace plasmon
