#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace sonine {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Evaluation requested exactly at a pole. The caller decides what the
/// removable-singularity or limit treatment should be.
class PoleError : public DomainError {
public:
  PoleError(const std::string& what, std::complex<double> where)
      : DomainError(what), where_(where) {}
  std::complex<double> where() const { return where_; }

private:
  std::complex<double> where_;
};

/// An iterative or quadrature budget was exhausted before reaching tolerance.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// A series or sum was truncated before its terms became negligible.
class TruncationError : public Error {
public:
  using Error::Error;
};

/// Sign-change zero count disagrees with the argument-principle count.
class MissedZeroError : public Error {
public:
  MissedZeroError(const std::string& what, int sign_changes, int winding)
      : Error(what), sign_changes_(sign_changes), winding_(winding) {}
  int sign_changes() const { return sign_changes_; }
  int winding() const { return winding_; }

private:
  int sign_changes_;
  int winding_;
};

/// A zero that must be simple looks multiple (|zeta'| below threshold).
class MultipleZeroError : public Error {
public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Input parsed but failed numerical validation.
class ValidationError : public Error {
public:
  ValidationError(const std::string& what, std::vector<double> failing)
      : Error(what), failing_(std::move(failing)) {}
  const std::vector<double>& failing() const { return failing_; }

private:
  std::vector<double> failing_;
};

/// Linear system too ill-conditioned to trust.
class DegenerateError : public Error {
public:
  using Error::Error;
};

/// A resource budget (memory, evaluations) would be exceeded.
class BudgetError : public Error {
public:
  using Error::Error;
};

/// Bad run configuration (CLI flags or config file).
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace sonine
