#pragma once

#include <stdexcept>
#include <string>

namespace subcoup {

// A requested computation exceeds a hard size cap (dense tables, exhaustive
// enumerations). Distinct from std::domain_error so callers can map it to a
// different exit code.
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver failed to converge; the message carries the best bound.
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subcoup
