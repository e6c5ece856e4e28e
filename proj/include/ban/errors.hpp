/// @file errors.hpp
/// @brief Error types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace ban {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a document cannot be parsed. Carries a 1-based position.
struct ParseError : Error {
  int line;
  int column;

  ParseError(int line_, int column_, const std::string& what_)
      : Error("parse error at " + std::to_string(line_) + ":" +
              std::to_string(column_) + ": " + what_),
        line(line_),
        column(column_) {}
};

/// Raised when an operation's precondition does not hold
/// (non-block-sequential schedule, transient circuit, not a TC, ...).
struct PreconditionError : Error {
  using Error::Error;
};

/// Raised when an exhaustive check would exceed a configured cap.
struct CapExceededError : Error {
  using Error::Error;
};

}  // namespace ban
