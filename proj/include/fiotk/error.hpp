#pragma once

#include <stdexcept>
#include <string>

namespace fiotk {

enum class ErrorKind {
  InvalidInput,
  Parameter,
  Dimension,
  Construction,
  Resolution,
  Coverage,
  DegenerateInput,
  Io,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace fiotk
