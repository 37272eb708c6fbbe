#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace llg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field/grid shape disagreement.
class SizeMismatchError : public Error {
 public:
  using Error::Error;
};

/// Index (shell, axis, exponent) outside the representable range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Stereographic projection evaluated too close to the pole s3 = -1.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Vector field with (near) zero length where a direction is required.
class DegenerateFieldError : public Error {
 public:
  using Error::Error;
};

/// Time integration produced non-finite values.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, std::int64_t step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

/// Malformed configuration or incompatible run parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable snapshot / manifest file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace llg
