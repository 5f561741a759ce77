#pragma once

#include <stdexcept>
#include <string>

namespace csq {

/// A numerical precondition could not be met at runtime (series truncation
/// cap reached, bracket without sign change, quadrature rule too short, ...).
/// Distinct from std::invalid_argument, which signals a bad input value.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// Two independent computation routes disagreed beyond tolerance.
class consistency_error : public std::runtime_error {
 public:
  explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace csq
