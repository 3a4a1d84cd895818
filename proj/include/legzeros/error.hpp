#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace legzeros {

enum class ErrorKind {
  invalid_input,
  non_convergence,
  singular_matrix,
  pole,
  range,
  capacity,
  wrong_branch,
  stiffness,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for every failure in the library; `kind()` selects
/// the category (the CLI maps it to an exit code).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace legzeros
