#pragma once

#include <stdexcept>
#include <string>

namespace sat2qubo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (DIMACS, JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive routine was asked to enumerate beyond its configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace sat2qubo
