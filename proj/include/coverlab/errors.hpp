#pragma once

#include <stdexcept>
#include <string>

namespace coverlab {

// Base of all library errors. exit_code() matches the CLI contract:
// 3 = invalid input, 4 = resource cap exceeded.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual int exit_code() const { return 3; }
};

class InvalidInputError : public Error {
  public:
    using Error::Error;
};

class InvalidParameterError : public InvalidInputError {
  public:
    using InvalidInputError::InvalidInputError;
};

// Space / enumeration larger than the configured cap.
class TooLargeError : public Error {
  public:
    using Error::Error;
    int exit_code() const override { return 4; }
};

// Modulus not square-free (the CRT reduction requires square-free moduli).
class SquarefreeViolationError : public InvalidInputError {
  public:
    using InvalidInputError::InvalidInputError;
};

// A prime factor of a modulus lies beyond the supplied prime list.
class SpaceTooSmallError : public InvalidInputError {
  public:
    using InvalidInputError::InvalidInputError;
};

// Input contains a progression/hyperplane that covers everything outright
// (modulus 1, or a hyperplane with no fixed coordinates) where the round
// decomposition is undefined.
class TriviallyCoveringError : public InvalidInputError {
  public:
    using InvalidInputError::InvalidInputError;
};

// A checked mathematical hypothesis failed (parallel pair present, growth
// condition violated, ...).
class HypothesisViolationError : public InvalidInputError {
  public:
    using InvalidInputError::InvalidInputError;
};

// Query about a set that is not measurable at the given round.
class NotMeasurableError : public InvalidInputError {
  public:
    using InvalidInputError::InvalidInputError;
};

// epsilon outside the range the constant calculation supports.
class UnsupportedEpsilonError : public InvalidInputError {
  public:
    using InvalidInputError::InvalidInputError;
};

class UnknownNameError : public InvalidInputError {
  public:
    using InvalidInputError::InvalidInputError;
};

}  // namespace coverlab
