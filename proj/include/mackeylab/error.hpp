#pragma once

#include <stdexcept>
#include <string>

namespace mackeylab {

/// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
  Input,          // malformed or inconsistent input (exit 2)
  BoundExceeded,  // a configured size limit was hit (exit 3)
  Invariant,      // internal invariant violation (exit 1)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

class InputError : public Error {
 public:
  InputError(std::string code, const std::string& message)
      : Error(ErrorKind::Input, std::move(code), message) {}
};

class BoundExceeded : public Error {
 public:
  explicit BoundExceeded(const std::string& message)
      : Error(ErrorKind::BoundExceeded, "BoundExceeded", message) {}
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& message)
      : Error(ErrorKind::Invariant, "InvariantViolation", message) {}
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input:
      return 2;
    case ErrorKind::BoundExceeded:
      return 3;
    case ErrorKind::Invariant:
      return 1;
  }
  return 1;
}

}  // namespace mackeylab
