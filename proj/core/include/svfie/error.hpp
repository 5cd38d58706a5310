#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace svfie {

// Argument outside the half-open unit interval (or another function domain).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The assembled linear system could not be factorized.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Monte Carlo path failed; carries the index of the offending path.
class PathSolveError : public std::runtime_error {
 public:
  PathSolveError(std::size_t path_index, const std::string& what)
      : std::runtime_error("path " + std::to_string(path_index) + ": " + what),
        path_index_(path_index) {}

  std::size_t path_index() const noexcept { return path_index_; }

 private:
  std::size_t path_index_;
};

}  // namespace svfie
