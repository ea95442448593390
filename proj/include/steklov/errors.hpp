#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

// Raised when two independent computation routes that must agree do not
// (e.g. the direct and inverse counting paths), or when a structural
// contract of the discretization is violated (sign contract, asymmetry gate).
class internal_error : public std::runtime_error {
public:
  explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a linear solve or eigensolve fails to reach its tolerance.
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace steklov
