#pragma once

#include <stdexcept>
#include <string>

namespace risac {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operand shapes do not line up (vector lengths, matrix dims).
struct DimensionMismatch : Error {
  using Error::Error;
};

/// Element or row/column index outside the valid range.
struct IndexOutOfRange : Error {
  using Error::Error;
};

/// Geometry puts two nodes at (numerically) the same point, so path
/// amplitudes and angles are undefined.
struct DegenerateGeometry : Error {
  using Error::Error;
};

/// A channel vector that must be nonzero is (numerically) zero.
struct ZeroChannel : Error {
  using Error::Error;
};

/// The SNR constraint cannot be met at any transmit vector within the
/// power budget.
struct Infeasible : Error {
  using Error::Error;
};

/// Internal contradiction while splitting the collinear beamformer case;
/// indicates broken numerics rather than bad input.
struct DegenerateSpan : Error {
  using Error::Error;
};

/// Per-element objective is flat (both interference arms vanish), so no
/// stationary phase exists.
struct DegenerateObjective : Error {
  using Error::Error;
};

/// Config file missing, malformed, or holding an out-of-domain value.
struct ConfigError : Error {
  using Error::Error;
};

/// An aggregate was requested over zero rows.
struct EmptyInput : Error {
  using Error::Error;
};

}  // namespace risac
