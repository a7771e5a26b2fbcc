#pragma once

#include <stdexcept>
#include <string>

namespace qsync {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or Hilbert-space dimension outside the supported range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its mathematical domain (negative rate, p > 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The Liouvillian has no unique steady state (singular trace-constrained system).
class DegenerateDynamicsError : public Error {
 public:
  using Error::Error;
};

/// Phase grid too coarse for the Fourier content of the state.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class OrderError : public Error {
 public:
  using Error::Error;
};

class SweepError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, long line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace qsync
