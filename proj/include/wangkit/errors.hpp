#pragma once

#include <stdexcept>
#include <string>

namespace wangkit {

// Error taxonomy used across the toolkit. Each class maps to a distinct
// CLI exit code (see cli.hpp).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed file contents (tile sets, patches, machines, programs).
struct FormatError : InputError {
  explicit FormatError(const std::string& what) : InputError(what) {}
};

// Parameters that cannot be realized geometrically or arithmetically
// (layout does not fit, program text overflows its field, expansion too big).
struct SizingError : InputError {
  explicit SizingError(const std::string& what) : InputError(what) {}
};

// A required capability is missing on the object (e.g. letter projection
// requested on a tile set without one).
struct ConfigError : InputError {
  explicit ConfigError(const std::string& what) : InputError(what) {}
};

// A block decomposition hits an incomplete block at a border.
struct BoundaryError : InputError {
  explicit BoundaryError(const std::string& what) : InputError(what) {}
};

}  // namespace wangkit
