#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace bcinv {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: polynomial syntax, field files, bad arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Division by the zero polynomial, a non-invertible leading coefficient, etc.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// The request is well formed but outside what the toolkit supports.
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// Z[theta] is not maximal at p, so Dedekind's splitting theorem does not apply.
class NotPMaximal : public ScopeError {
 public:
  explicit NotPMaximal(mpz_class p)
      : ScopeError("Z[theta] is not " + p.get_str() + "-maximal"), p_(std::move(p)) {}
  const mpz_class& prime() const noexcept { return p_; }

 private:
  mpz_class p_;
};

class UnsupportedField : public ScopeError {
 public:
  using ScopeError::ScopeError;
};

/// The ideal enumeration did not saturate: class count still grows with the bound.
class SaturationFailure : public ScopeError {
 public:
  using ScopeError::ScopeError;
};

/// A cross-check between two independent routes failed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bcinv
