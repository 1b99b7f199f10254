#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csakit {

// Base of every error raised by the toolkit. The CLI maps all of these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A letter references a generator outside the ambient alphabet.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The base group has no implemented membership test for the requested operation.
class UnsupportedBase : public Error {
 public:
  using Error::Error;
};

// Graph shape outside what an operation accepts (e.g. a cycle where a tree is needed).
class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t cap) : Error(what), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace csakit
