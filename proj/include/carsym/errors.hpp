#pragma once

#include <stdexcept>
#include <string>

namespace carsym {

// Operation called outside its domain (bad support, k too small, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A checker battery was invoked with an unverified precondition.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text input rejected; column is 1-based.
struct ParseError : std::runtime_error {
  std::size_t column;
  ParseError(const std::string& msg, std::size_t col)
      : std::runtime_error(msg + " (column " + std::to_string(col) + ")"), column(col) {}
};

}  // namespace carsym
