#pragma once

#include <stdexcept>

namespace ranksde {

// Estimation/runtime failures (as opposed to bad parameters, which use
// std::invalid_argument, and bad data values, which use std::domain_error).
class estimation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ranksde
