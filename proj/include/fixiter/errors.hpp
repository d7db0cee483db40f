#pragma once

#include <stdexcept>
#include <string>

namespace fixiter {

/// Thrown when an algorithm produces non-finite values or fails to
/// converge where convergence is required. Configuration and
/// precondition violations throw std::invalid_argument instead.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fixiter
