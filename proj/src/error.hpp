#pragma once

#include <stdexcept>
#include <string>

namespace valveuc {

/// Base class for every error raised by the solver core.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance/MPS/solution text. Carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// An argument outside the domain of a function (e.g. power outside limits).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Instance rejected by validation.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Time limit reached before any feasible solution was found.
class NoIncumbentError : public Error {
 public:
  using Error::Error;
};

/// Failure while driving an external MIP solver.
class ExternalSolverError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace valveuc
