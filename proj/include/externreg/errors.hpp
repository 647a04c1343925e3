#pragma once
// Error taxonomy shared by the library and the CLI. Each error carries the
// process exit code the CLI maps it to, so failure semantics live in one place.

#include <stdexcept>
#include <string>

namespace externreg {

// CLI exit codes. 0 is success.
enum class ExitCode : int {
  Ok = 0,
  Precondition = 1,  // domain/range violations, unmet operation preconditions
  Parse = 2,         // malformed JSON or flag syntax
  Infeasible = 3,    // profit floor unreachable by any policy
  Degenerate = 4,    // zero sale probability or otherwise vacuous input policy
  Io = 5,            // unreadable/unwritable paths
  UnknownCase = 6,   // casebook name not recognized
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }
  int exit_status() const { return static_cast<int>(code_); }

 private:
  ExitCode code_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ExitCode::Precondition, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what)
      : Error(ExitCode::Parse, what) {}
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what)
      : Error(ExitCode::Infeasible, what) {}
};

class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what)
      : Error(ExitCode::Degenerate, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ExitCode::Io, what) {}
};

class UnknownCaseError : public Error {
 public:
  explicit UnknownCaseError(const std::string& what)
      : Error(ExitCode::UnknownCase, what) {}
};

}  // namespace externreg
