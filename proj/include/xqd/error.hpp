#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xqd {

enum class ErrorKind {
  NotHermitian,
  NotPSD,
  NoConvergence,
  InvalidParams,
  NotUnitary,
  NotSymmetricFamily,
  PreconditionNotMet,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` carries the category so
/// callers (the CLI in particular) can map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace xqd
