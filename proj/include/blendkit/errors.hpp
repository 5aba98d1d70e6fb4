#ifndef BLENDKIT_ERRORS_HPP
#define BLENDKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blendkit {

// Base class for everything thrown on purpose by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

struct DegreeOrder : Error {
  using Error::Error;
};

struct IntervalMismatch : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

struct NotIncreasing : Error {
  using Error::Error;
};

struct InvalidSpec : Error {
  using Error::Error;
};

struct NonFiniteSample : Error {
  using Error::Error;
};

struct NotInGrid : Error {
  using Error::Error;
};

struct InsufficientData : Error {
  using Error::Error;
};

// Raised when log or sqrt is evaluated outside its domain.
struct EvalDomainError : Error {
  using Error::Error;
};

// Parse failure; offset is the 0-based position in the input text.
struct SyntaxError : Error {
  std::size_t offset;
  SyntaxError(std::size_t off, const std::string& what)
      : Error(what + " at offset " + std::to_string(off)), offset(off) {}
};

}  // namespace blendkit

#endif
