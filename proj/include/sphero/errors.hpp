#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sphero {

// Root of every error the library throws. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSkew : public Error {
 public:
  using Error::Error;
};

class NotOrthogonal : public Error {
 public:
  using Error::Error;
};

class Degenerate : public Error {
 public:
  using Error::Error;
};

class InvalidStep : public Error {
 public:
  using Error::Error;
};

class DegenerateParams : public Error {
 public:
  using Error::Error;
};

// Elliptic argument outside the supported range (m >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Closed-form extremal requested in the rotating-pendulum regime (A >= E).
class BranchError : public Error {
 public:
  using Error::Error;
};

// Closed-form extremal requested with a - 2(sqrt(H) - sigma1) <= 0.
class ConditionError : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::string key)
      : Error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  SchemaError(const std::string& what, std::size_t row)
      : Error(what), row_(row) {}
  // 0 is the header row, data rows count from 1.
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace sphero
