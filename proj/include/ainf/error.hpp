#pragma once

#include <stdexcept>
#include <string>

namespace ainf {

// Error kinds:
//   Malformed    -- unreadable input (bad rational, bad file syntax, ...)
//   Precondition -- structurally readable but violates a documented precondition
//                   (degree rule, skew-symmetry, nondegeneracy, gapped-ness, ...)
//   Domain       -- an operation was asked outside its domain (e.g. constructing a
//                   cyclic model from data whose hypotheses fail)
enum class ErrorKind { Malformed, Precondition, Domain };

class Error : public std::runtime_error {
public:
  Error(ErrorKind k, std::string msg, int line = -1, int col = -1)
      : std::runtime_error(std::move(msg)), kind(k), line(line), col(col) {}

  ErrorKind kind;
  int line; // 1-based position in source text, -1 when not file-originated
  int col;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg, int line = -1,
                              int col = -1) {
  throw Error(k, msg, line, col);
}

} // namespace ainf
