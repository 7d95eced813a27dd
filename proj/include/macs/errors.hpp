#pragma once

#include <stdexcept>
#include <string>

namespace macs {

// Invalid argument or parameter outside the domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Fan angle or wedge geometry cannot be formed.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or iteration failed to reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root bracket for the critical constant could not be established.
class UnsolvableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data problems: missing file, malformed CSV, degenerate design.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace macs
