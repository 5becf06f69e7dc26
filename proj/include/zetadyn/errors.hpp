#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zetadyn {

/// Root of the library's error hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with user-supplied data (files, tables, sample vectors).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Failures arising from the numerics themselves.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

class OverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// An orbit point with exactly zero derivative; carries the orbit index.
class DegenerateOrbit : public NumericError {
 public:
  DegenerateOrbit(const std::string& what, std::size_t index)
      : NumericError(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class DegenerateSpectrum : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Unparseable text input; carries the 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Ordering violation in a value table; carries the first offending index.
class MonotonicityError : public InputError {
 public:
  MonotonicityError(const std::string& what, std::size_t index)
      : InputError(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class EmptyTable : public InputError {
 public:
  using InputError::InputError;
};

class EmptyInput : public InputError {
 public:
  using InputError::InputError;
};

class TooFewZeros : public InputError {
 public:
  using InputError::InputError;
};

class LengthMismatch : public InputError {
 public:
  using InputError::InputError;
};

class NonUniformGrid : public InputError {
 public:
  using InputError::InputError;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace zetadyn
