#pragma once

#include <stdexcept>
#include <string>

namespace factlab {

// A formula was evaluated outside the parameter regime in which its
// defining quantities exist (e.g. an iterated logarithm of a value <= 1).
struct out_of_regime_error : std::domain_error {
    using std::domain_error::domain_error;
};

// An allocation request exceeded the configured memory budget.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace factlab
