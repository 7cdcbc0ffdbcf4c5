#pragma once

#include <stdexcept>
#include <string>

namespace ncert {

/// Invalid argument or violated operation precondition (caller error).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed textual input (expression or serialized structure).
class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

/// The matrix reduction chain cannot proceed (e.g. an all-zero active
/// subcolumn); signals inconsistent input data rather than a caller bug.
class ReducibilityError : public std::runtime_error {
 public:
  explicit ReducibilityError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal cross-check failed. Reaching this indicates a bug in the
/// library itself, never bad user input.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ncert
