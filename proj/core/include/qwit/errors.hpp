#pragma once

#include <stdexcept>
#include <string>

namespace qwit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised by Pearson-type quantities when a subsystem variance vanishes,
/// i.e. the subsystem carries a fixed charge.
class ZeroVariance : public Error {
 public:
  using Error::Error;
};

/// Master-equation integration drifted beyond the abort threshold.
class IntegratorAbort : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant that should hold up to round-off was violated.
class LinalgFailure : public Error {
 public:
  using Error::Error;
};

/// A workload exceeds the configured desk-scale dimension cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace qwit
