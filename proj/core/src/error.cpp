#include "cmrf/error.hpp"

namespace cmrf {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Capacity: return "capacity exceeded";
    case ErrorKind::NumericalFailure: return "numerical failure";
    case ErrorKind::Io: return "i/o error";
  }
  return "unknown error";
}

}  // namespace cmrf
