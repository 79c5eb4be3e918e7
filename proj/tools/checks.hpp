#pragma once

#include <string>
#include <vector>

namespace tpc::checks {

struct Result {
    int id;
    std::string name;
    bool pass;
    std::string detail;  // deterministic summary
    double seconds;
};

/// `scale` multiplies every trial count (at least one trial each).
/// Criterion 12 needs the command-line tool and is not part of this list.
std::vector<Result> run(const std::vector<int>& which, double scale = 1.0);

}  // namespace tpc::checks
