#pragma once

#include <stdexcept>
#include <string>

namespace hzeta {

// Root of the library's error hierarchy. Every failure a caller can trigger
// through arguments or tolerances derives from this.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// s = 1 is the simple pole of zeta(s, omega).
class PoleAtOne : public Error {
 public:
  using Error::Error;
};

class PoleAtNonpositiveInteger : public Error {
 public:
  using Error::Error;
};

// Requested absolute tolerance is outside what 64-bit arithmetic supports.
class InvalidTolerance : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class TruncationTooLarge : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class InsufficientBlocks : public Error {
 public:
  using Error::Error;
};

class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hzeta
