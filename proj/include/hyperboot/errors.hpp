#pragma once

#include <stdexcept>
#include <string>

namespace hyperboot {

/// Raised when an exact computation would exceed its configured size budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input files or pattern specifications.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hyperboot
