#pragma once

#include <stdexcept>
#include <string>

namespace cusp {

// Domain errors (bad input, violated preconditions). The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation could not be completed inside the truncation (depth cap,
// ball radius, search budget). The answer is unknown, not negative.
class UncertifiedError : public Error {
 public:
  UncertifiedError(std::string stage, std::string const& what)
      : Error(stage + ": " + what), _stage(std::move(stage)) {}

  std::string const& stage() const noexcept { return _stage; }

 private:
  std::string _stage;
};

class ParseError : public Error {
 public:
  ParseError(std::string const& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column "
              + std::to_string(column) + ": " + msg),
        _line(line),
        _column(column) {}

  int line() const noexcept { return _line; }
  int column() const noexcept { return _column; }

 private:
  int _line;
  int _column;
};

}  // namespace cusp
