#pragma once

#include <stdexcept>
#include <string>

namespace causaltree {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A tree violated a structural invariant (bad theta, broken path partition, ...).
struct StructureError : Error {
  using Error::Error;
};

/// An argument was outside its documented domain.
struct ValueError : Error {
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured outcome cap.
struct CapacityError : Error {
  using Error::Error;
};

/// A file or document could not be parsed.
struct ParseError : Error {
  using Error::Error;
};

/// The requested operation is not defined for the given inputs
/// (e.g. the entropy strategy on context-dependent hypotheses).
struct UnsupportedError : Error {
  using Error::Error;
};

}  // namespace causaltree
