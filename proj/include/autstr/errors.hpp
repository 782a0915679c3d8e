#pragma once

#include <stdexcept>
#include <string>

namespace autstr {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: alphabet mismatches, bad indices, unparsable text.
struct InputError : Error {
  explicit InputError(const std::string& what) : Error(what) {}
};

/// Parse failure with a 1-based line number.
struct ParseError : InputError {
  int line;
  ParseError(int line_, const std::string& what)
      : InputError("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

/// A construction exceeded its state/letter budget.  Raised instead of ever
/// returning a wrong answer.
struct CapacityError : Error {
  explicit CapacityError(const std::string& what) : Error(what) {}
};

/// Internal self-check failed (e.g. a witness did not re-verify).
struct InvariantError : Error {
  explicit InvariantError(const std::string& what) : Error(what) {}
};

/// A formula needs an operation the presentation kind does not support
/// (e.g. unrestricted negation over tree presentations).
struct UnsupportedFragmentError : Error {
  explicit UnsupportedFragmentError(const std::string& what) : Error(what) {}
};

/// Resource limits for the automaton constructions.  Counts are checked as
/// states (or game vertices) are created; exceeding a limit raises
/// CapacityError.
struct Budget {
  std::size_t max_states = 1'000'000;
  std::size_t max_letters = 1u << 20;
};

}  // namespace autstr
