#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace heis::verify {

struct PropertyResult {
    std::string scope;     // owning module
    std::string name;      // short identifier
    std::string statement; // the property in formula form
    bool pass = false;
    std::string detail;    // counterexample or measured values
};

struct SuiteResult {
    std::vector<PropertyResult> properties;

    bool all_pass() const {
        for (const PropertyResult& p : properties) {
            if (!p.pass) {
                return false;
            }
        }
        return true;
    }
};

// Recognized scopes (plus "all").
const std::vector<std::string>& scopes();

// Runs every registered property in the scope.  Checks are randomized from
// the seed but deterministic given it; `tolerance` loosens only the
// floating-point comparisons of the subriemannian scope.  Unknown scope
// throws Error (a usage error at the CLI).
SuiteResult run_scope(const std::string& scope, std::uint64_t seed,
                      double tolerance = 0.05);

} // namespace heis::verify
