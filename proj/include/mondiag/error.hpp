#pragma once

#include <stdexcept>
#include <string>

namespace mondiag {

/// Library-wide exception. The kind decides the CLI exit code:
/// parse/usage map to 2, domain to 1. `internal` marks a broken
/// invariant inside the library itself and should never escape
/// in normal operation.
class Error : public std::runtime_error {
public:
  enum class Kind { parse, usage, domain, internal };

  Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

inline Error parse_error(std::size_t line, const std::string& msg) {
  return Error(Error::Kind::parse, "line " + std::to_string(line) + ": " + msg);
}

inline Error parse_error(const std::string& msg) { return Error(Error::Kind::parse, msg); }
inline Error usage_error(const std::string& msg) { return Error(Error::Kind::usage, msg); }
inline Error domain_error(const std::string& msg) { return Error(Error::Kind::domain, msg); }
inline Error internal_error(const std::string& msg) { return Error(Error::Kind::internal, msg); }

}  // namespace mondiag
