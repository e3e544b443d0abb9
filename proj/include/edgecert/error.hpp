#pragma once

#include <stdexcept>
#include <string>

namespace edgecert {

enum class ErrorKind {
  InvalidInput,
  GenericityViolation,
  DenseGate,
  InternalContradiction,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when alpha_i^{-1} alpha_j coincides with beta_i^{-1} beta_j; carries the
/// first offending pair (1-based).
class GenericityError : public Error {
 public:
  GenericityError(int i, int j, const std::string& what)
      : Error(ErrorKind::GenericityViolation, what), i_(i), j_(j) {}
  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }

 private:
  int i_;
  int j_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidInput, what);
}

}  // namespace edgecert
