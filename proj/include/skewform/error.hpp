#pragma once

#include <stdexcept>
#include <string>

namespace skewform {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state left the admissible set of its model (e.g. nonpositive geopotential).
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent sizes, layouts, axes or faces.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Time marching aborted (CFL violation, blow-up guard).
class MarchError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or command-line input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace skewform
