#pragma once

#include <stdexcept>
#include <string>

namespace hyperlex {

// Failure classes surfaced by the library. The CLI maps these onto exit
// codes: InvalidArgument -> usage, Internal/NonFinite -> internal fault,
// everything else -> data error.
enum class Errc {
  InvalidArgument,
  Io,
  VersionMismatch,
  Truncated,
  ChecksumMismatch,
  ParseError,
  Domain,
  Degenerate,
  MissingWord,
  NonFinite,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "invalid-argument";
    case Errc::Io: return "io";
    case Errc::VersionMismatch: return "version-mismatch";
    case Errc::Truncated: return "truncated";
    case Errc::ChecksumMismatch: return "checksum-mismatch";
    case Errc::ParseError: return "parse-error";
    case Errc::Domain: return "domain";
    case Errc::Degenerate: return "degenerate";
    case Errc::MissingWord: return "missing-word";
    case Errc::NonFinite: return "non-finite";
    case Errc::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace hyperlex
