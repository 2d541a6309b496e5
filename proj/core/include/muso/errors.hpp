#pragma once

#include <stdexcept>

namespace muso {

/// Base class for all library errors.
class error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller passed an argument outside an operation's domain.
class invalid_input_error : public error {
  using error::error;
};

/// A configuration value or cross-field constraint was rejected.
class validation_error : public error {
  using error::error;
};

/// A structural assumption failed at runtime, e.g. a modular that must be
/// nonincreasing in the scaling parameter was observed increasing.
class consistency_error : public error {
  using error::error;
};

/// Filesystem or serialization failure.
class io_error : public error {
  using error::error;
};

}  // namespace muso
