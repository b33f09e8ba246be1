// Error types shared by all modules.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geom {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed expression text; `position` is the byte offset into the input.
struct SyntaxError : Error {
  std::size_t position;
  SyntaxError(std::size_t pos, const std::string& msg)
      : Error("syntax error at position " + std::to_string(pos) + ": " + msg),
        position(pos) {}
};

// Variable or function name not declared in the evaluation context.
struct UnknownIdentifier : Error {
  std::string name;
  explicit UnknownIdentifier(std::string n)
      : Error("unknown identifier '" + n + "'"), name(std::move(n)) {}
};

// log/sqrt of a negative argument, division by zero, non-positive pow base.
struct DomainError : Error {
  using Error::Error;
};

// Spec document does not match the expected schema.
struct SchemaError : Error {
  using Error::Error;
};

struct UnknownPreset : Error {
  explicit UnknownPreset(const std::string& n) : Error("unknown preset '" + n + "'") {}
};

// Scalar product failed the non-degeneracy requirement at the given tolerance.
struct DegenerateMetric : Error {
  using Error::Error;
};

// Point left the chart's domain box.
struct OutOfChart : Error {
  using Error::Error;
};

// Curve parameter outside the curve's interval.
struct OutOfInterval : Error {
  using Error::Error;
};

struct BasePointMismatch : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct MaxStepsExceeded : Error {
  using Error::Error;
};

struct SingularFrame : Error {
  using Error::Error;
};

// Finite-difference stencil would leave the domain.
struct StepTooLarge : Error {
  using Error::Error;
};

}  // namespace geom
