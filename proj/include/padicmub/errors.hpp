#pragma once

#include <stdexcept>
#include <string>

namespace padicmub {

/// Malformed or out-of-domain input (non-prime modulus, zero denominator, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A truncated p-adic value does not carry enough digits for the requested
/// operation.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed-form Gauss sum/integral formula was asked for outside its
/// hypothesis (only p != 2 is covered).
class LemmaHypothesisError : public InvalidArgument {
 public:
  explicit LemmaHypothesisError(const std::string& what)
      : InvalidArgument(what + " (lemma hypothesis p != 2)") {}
};

/// Exhaustive computation would exceed the configured term or cell cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Grid resolution is too coarse for the requested state or operator.
class ResolutionError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace padicmub
