#pragma once

#include <stdexcept>
#include <string>

namespace gstar {

/// A precondition or domain restriction was violated (bad range, malformed
/// input, invalid profile). The CLI maps this to exit status 1.
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured resource budget would be exceeded. The CLI maps this to exit
/// status 2.
class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gstar
