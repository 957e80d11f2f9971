#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gsqg {

/// Process exit codes used by the command-line driver.
enum class ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kNumerical = 3,
  kAccuracy = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::kValidation; }
  virtual const char* kind() const noexcept { return "error"; }
};

class InvalidInput : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_input"; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

class GridMismatch : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "grid_mismatch"; }
};

/// Collects every violation found while validating a configuration.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }
  const char* kind() const noexcept override { return "validation_error"; }

 private:
  std::vector<std::string> violations_;
};

class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }
  ExitCode exit_code() const noexcept override { return ExitCode::kNumerical; }
  const char* kind() const noexcept override { return "numerical_error"; }

 private:
  double time_;
};

/// Raised by the small-slope guard: max|phi_x| left the trusted regime.
class BlowupError : public NumericalError {
 public:
  BlowupError(const std::string& what, double time, double max_slope)
      : NumericalError(what, time), max_slope_(max_slope) {}
  double max_slope() const noexcept { return max_slope_; }
  const char* kind() const noexcept override { return "simulation_blowup"; }

 private:
  double max_slope_;
};

/// A quadrature could not certify the requested tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved) : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }
  ExitCode exit_code() const noexcept override { return ExitCode::kAccuracy; }
  const char* kind() const noexcept override { return "accuracy_error"; }

 private:
  double achieved_;
};

}  // namespace gsqg
