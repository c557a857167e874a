#pragma once

#include <stdexcept>

namespace dwmk {

// ===== Domain errors ========================================================
// Bad keys, infeasible parameters, size mismatches. The CLI maps these to
// exit code 3.

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedPrimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class LengthMismatchError : public DomainError {
 public:
  using DomainError::DomainError;
};

class BudgetInfeasibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class TooManyBitsError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DuplicatePrimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DimensionMismatchError : public DomainError {
 public:
  using DomainError::DomainError;
};

// ===== Container/format errors ==============================================
// Malformed image payloads. The CLI maps these, together with IoError, to
// exit code 2.

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BadMagicError : public FormatError {
 public:
  using FormatError::FormatError;
};

class BadHeaderError : public FormatError {
 public:
  using FormatError::FormatError;
};

class UnsupportedMaxvalError : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncatedPayloadError : public FormatError {
 public:
  using FormatError::FormatError;
};

// OS-level read/write failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dwmk
