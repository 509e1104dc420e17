#pragma once

#include <stdexcept>
#include <string>

namespace glue {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  int line_;
  int column_;
};

class TypeError : public Error {
 public:
  using Error::Error;
};

/// An f-structure path that does not resolve.
class PathError : public Error {
 public:
  using Error::Error;
};

/// A lexical template whose paths do not resolve against the f-structure
/// the word heads.
class UninstantiableError : public Error {
 public:
  UninstantiableError(const std::string& what, std::string missing)
      : Error(what), missing_(std::move(missing)) {}
  const std::string& missing() const { return missing_; }

 private:
  std::string missing_;
};

class MissingEntryError : public Error {
 public:
  using Error::Error;
};

/// Higher-order unification problem outside the Miller pattern fragment.
class PatternError : public Error {
 public:
  using Error::Error;
};

class BoundExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace glue
