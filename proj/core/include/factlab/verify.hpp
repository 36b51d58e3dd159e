#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "factlab/sieve.hpp"

namespace factlab {

struct CaseResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t limit;
    bool passed;
    std::vector<CaseResult> cases;
};

// Known suites: oracle-counts, bell-fubini, special-fn, sandwich,
// kalmar-trend.  Throws std::invalid_argument for anything else.  A sieve
// covering the limit may be passed in to avoid a rebuild; suites that need
// one build their own otherwise.
SuiteReport run_suite(const std::string& suite, std::uint64_t limit,
                      const SieveTable* table = nullptr);

std::vector<std::string> known_suites();

}  // namespace factlab
