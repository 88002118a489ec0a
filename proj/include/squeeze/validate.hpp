#pragma once

// Cross-validation battery: every identity the formulas promise, run over
// pinned grids. Fast tier is a thinned version of the full grids meant for
// interactive runs; full tier is the release gate.

#include <string>
#include <vector>

namespace squeeze::validate {

enum class Tier { fast, full };

struct CheckResult {
    std::string name;
    bool pass = false;
    double max_dev = 0.0;     // worst deviation in the check's own measure
    double tol = 0.0;
    std::string worst_point;  // where the worst deviation happened
    std::string error;        // nonempty when the check aborted with an exception
    double seconds = 0.0;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_pass = false;
    bool non_convergence = false;  // some check aborted rather than merely failing
};

std::vector<std::string> check_names();

// threads <= 0: use SQUEEZE_VALIDATE_THREADS, else hardware concurrency.
// Results are ordered by check index regardless of the worker count.
Report run(Tier tier, int threads = 0);

}  // namespace squeeze::validate
