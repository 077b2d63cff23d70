#pragma once

#include <stdexcept>
#include <string>

namespace zalcman {

// Raised when a constructor or operation receives parameters outside its
// documented domain (non-unit rotation, weights off the simplex, beta >= 1...).
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an operation needs a measure representation that the class
// does not have (coefficient-constrained classes).
class UnsupportedClassError : public std::invalid_argument {
public:
  explicit UnsupportedClassError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace zalcman
