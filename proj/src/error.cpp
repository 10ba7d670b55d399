#include "fiotk/error.hpp"

namespace fiotk {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::Construction: return "construction error";
    case ErrorKind::Resolution: return "resolution error";
    case ErrorKind::Coverage: return "coverage error";
    case ErrorKind::DegenerateInput: return "degenerate input";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, std::string(error_kind_name(kind)) + ": " + message);
}

}  // namespace fiotk
