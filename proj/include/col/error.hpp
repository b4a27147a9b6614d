#ifndef COL_ERROR_HPP
#define COL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace col {

// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Concrete-syntax error with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Raised while compiling a formula or validating an input structure.
class BuildError : public Error {
 public:
  using Error::Error;
};

class IllegalMove : public Error {
 public:
  using Error::Error;
};

// Search or construction hit a configured bound. Never a refutation.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// A scripted strategy was applied to a game of the wrong shape.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace col

#endif  // COL_ERROR_HPP
