#pragma once

#include <stdexcept>
#include <string>

namespace geaoi {

// Raised when an input violates a model invariant (rates, probabilities,
// counts). The message names the violated invariant.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a cost budget admits no transition matrix.
class InfeasibleBudget : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace geaoi
