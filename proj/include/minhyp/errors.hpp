#pragma once

#include <stdexcept>
#include <string>

namespace minhyp {

/// Argument outside the domain of a formula (f <= 0, rho < a, |t| >= T(a), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The first-integral constant d is in the wrong regime for the requested
/// translation-surface operation.
class RegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical method stopped before reaching its tolerance. Carries the
/// best estimate so callers can decide whether it is usable.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_estimate,
                double error_estimate)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// A structural fact that must hold for every catenoid (a sign change, a
/// unique zero) was not observed numerically.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace minhyp
