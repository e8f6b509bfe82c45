#pragma once

// Overflow-safe hyperbolic helpers. Profiles reach rho of several hundred,
// and powers such as sinh^{2n-2} overflow long before sinh itself does, so
// everything downstream works with logarithms and ratios.

#include <cmath>

namespace minhyp::hyp {

/// log(sinh(x)) for x > 0.
inline double log_sinh(double x) {
  if (x > 20.0) return x - M_LN2 + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

/// log(cosh(x)).
inline double log_cosh(double x) {
  x = std::fabs(x);
  if (x > 20.0) return x - M_LN2 + std::log1p(std::exp(-2.0 * x));
  return std::log1p(2.0 * std::sinh(0.5 * x) * std::sinh(0.5 * x));
}

/// log(sinh(a + delta) / sinh(a)) for a > 0, delta >= 0, accurate as
/// delta -> 0 (no cancellation).
inline double log_sinh_ratio(double a, double delta) {
  if (delta < 1.0) {
    const double sh = std::sinh(0.5 * delta);
    return std::log1p(2.0 * sh * sh + std::sinh(delta) / std::tanh(a));
  }
  return log_sinh(a + delta) - log_sinh(a);
}

/// log(cosh(a + delta) / cosh(a)) for a >= 0, delta >= 0.
inline double log_cosh_ratio(double a, double delta) {
  if (delta < 1.0) {
    const double sh = std::sinh(0.5 * delta);
    return std::log1p(2.0 * sh * sh + std::sinh(delta) * std::tanh(a));
  }
  return log_cosh(a + delta) - log_cosh(a);
}

/// coth(x) for x > 0.
inline double coth(double x) { return 1.0 / std::tanh(x); }

/// 1/sinh^2(x), zero once it underflows.
inline double csch2(double x) {
  if (std::fabs(x) > 350.0) return 0.0;
  const double s = std::sinh(x);
  return 1.0 / (s * s);
}

/// 1/cosh(x) without overflow.
inline double sech(double x) {
  const double e = std::exp(-std::fabs(x));
  return 2.0 * e / (1.0 + e * e);
}

/// sinh^{p}(x) as exp(p log sinh x); may overflow to inf for huge p*x.
inline double sinh_pow(double x, double p) { return std::exp(p * log_sinh(x)); }

}  // namespace minhyp::hyp
