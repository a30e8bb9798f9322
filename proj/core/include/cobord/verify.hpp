#ifndef COBORD_VERIFY_HPP
#define COBORD_VERIFY_HPP

#include <string>
#include <vector>

namespace cobord {

struct CheckResult {
    std::string suite;
    std::string name;
    int weight = 0;
    bool pass = false;
    std::string detail;
};

// Runs the named invariant suite ("hopf", "fgl", "divdiff", "products" or
// "all") at the given weight. Checks clamp their scope to the weights the
// identities are specified at; the clamped weight is recorded per check.
// `inject_fault` deliberately corrupts one comparison (used to exercise the
// failure exit path).
std::vector<CheckResult> run_suite(const std::string& suite, int max_weight, unsigned seed,
                                   bool inject_fault = false);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace cobord

#endif
