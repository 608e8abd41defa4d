#pragma once

#include <stdexcept>
#include <string>

namespace specagg {

/// Invalid or inconsistent scenario/config input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the operation's domain (band counts, eta, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The primary queues cannot be stable: lambda_p exceeds mu_p, so the
/// empty-queue probability is undefined.
class UnstablePrimary : public std::domain_error {
 public:
  UnstablePrimary(double lambda_p, double mu_p);

  double lambda_p() const { return lambda_p_; }
  double mu_p() const { return mu_p_; }

 private:
  double lambda_p_;
  double mu_p_;
};

}  // namespace specagg
