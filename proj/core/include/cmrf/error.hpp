#pragma once

#include <stdexcept>
#include <string>

namespace cmrf {

enum class ErrorKind {
  InvalidInput,
  Parse,
  Capacity,
  NumericalFailure,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Exception carrying a coarse error category, used by the CLI to pick an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidInput, what);
}

}  // namespace cmrf
