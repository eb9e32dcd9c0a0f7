#include "attopmm/error.hpp"

namespace attopmm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::MalformedOrbital: return "malformed-orbital";
    case ErrorKind::BasisMismatch: return "basis-mismatch";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::Config: return "config";
    case ErrorKind::Numeric: return "numeric";
  }
  return "unknown";
}

}  // namespace attopmm
