#pragma once

#include <stdexcept>
#include <string>

namespace evifuse {

/// Raised when caller-supplied data violates a documented precondition
/// (bad class index, malformed file row, mismatched frames, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace evifuse
