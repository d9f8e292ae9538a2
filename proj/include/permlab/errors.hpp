#pragma once

#include <stdexcept>
#include <string>

namespace permlab {

enum class ErrorKind {
  Dimension,     // malformed shape or permutation
  Precondition,  // operation called outside its domain
  Guard,         // order exceeds a configured evaluation limit
  Infeasible,    // the requested surgery/construction has no solution
  Parse,         // malformed text or JSON input
  Io,            // unreadable or unwritable file
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace permlab
