#pragma once

#include <stdexcept>
#include <string>

namespace sop {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A polynomial mentions a variable that is not bound by the term's summation list.
struct UnboundVariableError : Error {
  using Error::Error;
};

/// Composition / application with incompatible wire counts.
struct ArityMismatchError : Error {
  using Error::Error;
};

/// A cyclotomic level too small to represent the requested value exactly.
struct LevelTooSmallError : Error {
  using Error::Error;
};

/// Exact evaluation would enumerate more path variables than the configured cap.
struct TooManyVariablesError : Error {
  using Error::Error;
};

/// Checked integer arithmetic overflowed.
struct OverflowError : Error {
  using Error::Error;
};

/// An operation that needs an even half-power scalar got an odd one.
struct NotPrimedFragmentError : Error {
  using Error::Error;
};

/// Phase denominators exceed the level an operation was asked to work at.
struct WrongLevelError : Error {
  using Error::Error;
};

/// Matrix entries live outside the ring an operation expects.
struct WrongRingError : Error {
  using Error::Error;
};

/// An operation needs at least one input and one output wire.
struct ArityTooSmallError : Error {
  using Error::Error;
};

/// A diagram scalar or box parameter has no exact representation here.
struct UnsupportedScalarError : Error {
  using Error::Error;
};

/// Parameter outside an operation's mathematical domain.
struct DomainError : Error {
  using Error::Error;
};

/// Malformed textual input (circuit source, polynomial text, JSON shape).
struct SyntaxError : Error {
  int line = 0;
  int column = 0;
  SyntaxError(const std::string& what, int line_, int column_)
      : Error(what + " at line " + std::to_string(line_) + ", column " + std::to_string(column_)),
        line(line_),
        column(column_) {}
  explicit SyntaxError(const std::string& what) : Error(what) {}
};

/// Qubit index outside the declared register.
struct IndexOutOfRangeError : Error {
  using Error::Error;
};

/// Two circuits with different widths cannot be compared.
struct WidthMismatchError : Error {
  using Error::Error;
};

}  // namespace sop
