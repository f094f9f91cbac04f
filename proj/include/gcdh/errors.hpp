#pragma once

#include <stdexcept>

namespace gcdh {

/// Thrown when an input violates a documented precondition or type invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace gcdh
