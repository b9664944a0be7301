#pragma once

#include <stdexcept>
#include <string>

namespace recoupling {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad (J, M) combination: |M| > J or parity mismatch.
class InvalidMagnetic final : public Error {
 public:
  using Error::Error;
};

// Input parameter outside its documented domain.
class DomainError final : public Error {
 public:
  using Error::Error;
};

// xi^2 in {0, 1}: asymptotic machinery undefined, fall back to exact.
class NonGeneric final : public Error {
 public:
  using Error::Error;
};

// Estimate requested in a region it does not cover.
class WrongRegion final : public Error {
 public:
  using Error::Error;
};

class NotOscillatory final : public Error {
 public:
  using Error::Error;
};

class NotSuppressed final : public Error {
 public:
  using Error::Error;
};

// A logarithm argument vanished under a non-vanishing coefficient.
class BranchPoint final : public Error {
 public:
  using Error::Error;
};

// A real log argument hit zero in the suppressed-region angles.
class LogDomain final : public Error {
 public:
  using Error::Error;
};

// Angular momentum vectors admit no real embedding.
class ClassicallyForbidden final : public Error {
 public:
  using Error::Error;
};

// Triangle inequality or Sum(M) = 0 violated where the geometry needs it.
class SelectionRule final : public Error {
 public:
  using Error::Error;
};

// Quantization axis parallel to one of the momentum vectors.
class DegenerateAxis final : public Error {
 public:
  using Error::Error;
};

// sin(theta/2) ~ 0: class-angle saddles undefined.
class Degenerate final : public Error {
 public:
  using Error::Error;
};

class ResolutionTooLow final : public Error {
 public:
  using Error::Error;
};

class ConfigError final : public Error {
 public:
  using Error::Error;
};

}  // namespace recoupling
