#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace propertime {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

// The truncated Fock space is too small for the requested state or evolution.
// required_dim is the solver's estimate of a dimension that would suffice
// (0 when no estimate is available).
class TruncationOverflow : public Error {
 public:
  TruncationOverflow(const std::string& what_arg, int required)
      : Error(what_arg), required_dim(required) {}
  int required_dim;
};

class InvalidOperator : public Error {
 public:
  using Error::Error;
};

class UnphysicalParameters : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidWitnessInput : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Phase unwrapping hit a jump too close to pi to resolve; sample_index points
// at the first offending sample.
class UnwrapFailure : public Error {
 public:
  UnwrapFailure(const std::string& what_arg, std::size_t index)
      : Error(what_arg), sample_index(index) {}
  std::size_t sample_index;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace propertime
