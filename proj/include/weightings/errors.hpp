#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wtg {

/// Base for every domain failure raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An expression is not polynomial in a variable where a polynomial is required.
class NotPolynomialError : public Error {
 public:
  using Error::Error;
};

}  // namespace wtg
