#pragma once
#include <stdexcept>
#include <string>

namespace wavetr {

/// Raised when a config field or argument violates a documented precondition.
/// Carries the name of the offending field.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Raised when an adaptive quadrature cannot reach its tolerance.
/// Carries the residual error estimate at the point of failure.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& message, double residual)
      : std::runtime_error(message + " (residual estimate " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace wavetr
