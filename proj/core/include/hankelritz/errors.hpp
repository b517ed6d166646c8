#pragma once

#include <stdexcept>
#include <string>

namespace hankelritz {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Moment generation refused because M exceeds the configured cap.
class MomentLimitExceeded : public Error {
 public:
  using Error::Error;
};

// A moment-matrix pivot went negative beyond tolerance; with moments of a
// positive measure this only happens when working precision is exhausted.
class IndefiniteMatrix : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class IntervalTooSmall : public Error {
 public:
  using Error::Error;
};

class InsufficientMoments : public Error {
 public:
  using Error::Error;
};

class SingularMomentMatrix : public Error {
 public:
  using Error::Error;
};

class SingularConnectedMatrix : public Error {
 public:
  using Error::Error;
};

class RootCountMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hankelritz
