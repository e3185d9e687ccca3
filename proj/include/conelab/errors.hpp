#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(const std::string& what, std::size_t expected, std::size_t got)
      : Error(what + ": expected dimension " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

/// An operation was called outside its documented domain.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// No constructor or solver exists for this input. Never a disproof.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace conelab
