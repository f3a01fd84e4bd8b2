#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace raystab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownGenerator : public Error {
 public:
  using Error::Error;
};

class EmptyPeriod : public Error {
 public:
  EmptyPeriod() : Error("ray period must be non-empty") {}
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class UnboundedGenerator : public Error {
 public:
  using Error::Error;
};

class NotDirected : public Error {
 public:
  using Error::Error;
};

class NotFinDirGenerator : public Error {
 public:
  using Error::Error;
};

// A grammar failed the structural part of the limiting definition.
class NotLimiting : public Error {
 public:
  using Error::Error;
};

class NonLimitingDetected : public Error {
 public:
  using Error::Error;
};

class InjectivityViolation : public Error {
 public:
  using Error::Error;
};

// Some exploration bound was hit before an answer was certain.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NoStabilization : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

class GeodesicSearchExhausted : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

class DivergentSeries : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

}  // namespace raystab
