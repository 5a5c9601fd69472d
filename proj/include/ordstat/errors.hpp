#pragma once

#include <stdexcept>
#include <string>

namespace ordstat {

/// A numeric argument lies outside the mathematical domain of the operation
/// (non-positive weight, probability outside [0,1), unsorted sequence, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// The call itself is malformed: index out of range, mismatched lengths,
/// empty grid, missing configuration.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ordstat
