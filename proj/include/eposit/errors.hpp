#pragma once

#include <stdexcept>
#include <string>

namespace eposit {

// Input outside a projection model's valid domain (angle or radius).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Object points are coplanar or otherwise rank-deficient.
class SingularConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The iteration produced a non-physical intermediate (s <= 0, Z0 <= 0, NaN).
class Diverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Manifest format_version differs from the one this build understands.
class ManifestVersionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace eposit
