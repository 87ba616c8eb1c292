#pragma once

#include <stdexcept>
#include <string>

namespace treedeck {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument exceeds one of the explicit vertex-count caps.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (tree file, deck file, canonical code).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A structural precondition does not hold (bad path, vertex not on path, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A deck-level recognizer was asked to run outside the hypotheses under
/// which the quantity is known to be deck-determined.
class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& what)
      : Error("hypothesis not satisfied: " + what) {}

  /// For procedures whose inputs fit none of the cases they can decide.
  static HypothesisError violated(const std::string& what) {
    return HypothesisError(Raw{}, "hypotheses violated: " + what);
  }

 private:
  struct Raw {};
  HypothesisError(Raw, const std::string& message) : Error(message) {}
};

/// Inputs contradict each other (tampered deck, negative solved count, ...).
class InconsistentError : public Error {
 public:
  using Error::Error;
};

}  // namespace treedeck
