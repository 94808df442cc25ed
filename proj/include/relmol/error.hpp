// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RELMOL_ERROR_HPP
#define RELMOL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace relmol {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorKind {
  domain,             // argument outside the mathematical domain
  convergence,        // iterative method or quadrature did not converge
  critical_coupling,  // Z*alpha at or above the critical value 2/pi
  precondition,       // input violates a documented precondition
  singular_point,     // evaluation on a singular set (e.g. x == y)
  insufficient_signal // data too close to the noise floor
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

struct CriticalCouplingError : Error {
  explicit CriticalCouplingError(const std::string& what)
      : Error(ErrorKind::critical_coupling, what) {}
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::precondition, what) {}
};

struct SingularPointError : Error {
  explicit SingularPointError(const std::string& what)
      : Error(ErrorKind::singular_point, what) {}
};

struct InsufficientSignalError : Error {
  explicit InsufficientSignalError(const std::string& what)
      : Error(ErrorKind::insufficient_signal, what) {}
};

/// Carries the last error estimate (quadrature) or residual (solvers).
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double last_estimate)
      : Error(ErrorKind::convergence, what), last_estimate_(last_estimate) {}

  double last_estimate() const noexcept { return last_estimate_; }

private:
  double last_estimate_;
};

}  // namespace relmol

#endif  // RELMOL_ERROR_HPP
