#pragma once

#include <stdexcept>
#include <string>

namespace attopmm {

enum class ErrorKind {
  InvalidArgument,
  MalformedOrbital,
  BasisMismatch,
  Unsupported,
  Parse,
  Io,
  Config,
  Numeric,
};

const char* to_string(ErrorKind kind);

// Structured error carried through every module. `line` is set by parsers.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int line = 0)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  ErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ErrorKind kind_;
  int line_;
};

}  // namespace attopmm
