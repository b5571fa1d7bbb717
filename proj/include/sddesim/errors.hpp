// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace sddesim {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Off-grid time, out-of-range index, mismatched grids.
struct RangeError : Error {
  using Error::Error;
};

// A coefficient produced a non-finite value.
struct ModelEvalError : Error {
  using Error::Error;
};

// Operation not applicable to this model (missing condition, wrong shape).
struct CapabilityError : Error {
  using Error::Error;
};

// Parameter outside its admissible domain (e.g. moment exponent too large).
struct DomainError : Error {
  using Error::Error;
};

// Diffusion matrix numerically singular.
struct DegeneracyError : Error {
  using Error::Error;
};

// Bad experiment configuration.
struct ConfigError : Error {
  using Error::Error;
};

// Bad input data (empty samples, invalid instance description).
struct InputError : Error {
  using Error::Error;
};

// Instance or request shape the implementation does not support.
struct UnsupportedError : Error {
  using Error::Error;
};

}  // namespace sddesim
