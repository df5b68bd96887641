#pragma once

#include <stdexcept>
#include <string>

namespace flexmm {

// Base of everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad field element or modulus (zero inversion, composite modulus, ...).
struct FieldError : Error {
  using Error::Error;
};

// Matrix / grid shape does not match what the operation expects.
struct ShapeError : Error {
  using Error::Error;
};

// Not enough servers or task results to run the decoder.
struct DecodeError : Error {
  using Error::Error;
};

// Oversampled interpolation failed its consistency check.
struct CorruptionError : Error {
  using Error::Error;
};

// No parameter choice fits the storage constraint.
struct InfeasibleError : Error {
  InfeasibleError(const std::string& what, double min_storage)
      : Error(what), min_storage_required(min_storage) {}
  double min_storage_required;
};

// File parsing / serialization problems.
struct IoError : Error {
  using Error::Error;
};

}  // namespace flexmm
