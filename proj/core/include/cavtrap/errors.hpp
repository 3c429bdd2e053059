#pragma once

#include <stdexcept>
#include <string>

namespace cavtrap {

// Solver breakdowns, consistency-check failures, trajectory blow-ups.
// Precondition violations use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cavtrap
