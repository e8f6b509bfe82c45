#pragma once

// Reference computations for the tests. They deliberately avoid the
// library's quadrature, log-ratio helpers and root finders: plain
// long-double trapezoid and Simpson sums on substituted integrands, and
// finite differences.

#include <cmath>
#include <functional>

namespace oracle {

using Real = long double;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;

/// Composite trapezoid on [lo, hi] with `panels` panels.
inline Real trapezoid(const std::function<Real(Real)>& f, Real lo, Real hi, long panels) {
  const Real h = (hi - lo) / panels;
  Real sum = 0.5L * (f(lo) + f(hi));
  for (long i = 1; i < panels; ++i) sum += f(lo + h * i);
  return sum * h;
}

/// Composite Simpson on [lo, hi]; `panels` is rounded up to even.
inline Real simpson(const std::function<Real(Real)>& f, Real lo, Real hi, long panels) {
  if (panels % 2) ++panels;
  const Real h = (hi - lo) / panels;
  Real sum = f(lo) + f(hi);
  for (long i = 1; i < panels; ++i) sum += (i % 2 ? 4.0L : 2.0L) * f(lo + h * i);
  return sum * h / 3.0L;
}

/// lambda(a, rho) for the profile of C_a: with u = a + s^2 the integrand
/// 2 s sinh^{n-1}(a) (sinh^{2n-2} u - sinh^{2n-2} a)^{-1/2} is smooth in s,
/// with limit 2 / sqrt((2n-2) coth a) at s = 0.
inline Real lambda_trapezoid(int n, Real a, Real rho, long panels = 1000000) {
  const Real sa = std::sinh(a);
  const Real p = 2.0L * n - 2.0L;
  auto f = [&](Real s) -> Real {
    if (s == 0.0L) return 2.0L / std::sqrt(p * std::cosh(a) / sa);
    const Real u = a + s * s;
    const Real r = std::sinh(u) / sa;  // > 1
    return 2.0L * s / std::sqrt(std::pow(r, p) - 1.0L);
  };
  return trapezoid(f, 0.0L, std::sqrt(rho - a), panels);
}

/// C(a) = cosh(a) int_1^inf (v^{2n-2}-1)^{-1/2} (sinh^2(a) v^2 + 1)^{-3/2} dv,
/// mapped to [0, pi/2) by v = sec^2(theta), where the integrand is smooth
/// and vanishes at pi/2.
inline Real constant_C_simpson(int n, Real a, long panels = 200000) {
  const Real sh2 = std::sinh(a) * std::sinh(a);
  const Real p = 2.0L * n - 2.0L;
  auto f = [&](Real th) -> Real {
    if (th >= kPi / 2) return 0.0L;
    const Real c = std::cos(th);
    const Real v = 1.0L / (c * c);
    // dv = 2 sec^2 tan dtheta; tan / sqrt(v^p - 1) -> 1/sqrt(p) as theta -> 0.
    const Real ratio = th == 0.0L ? 1.0L / std::sqrt(p) : std::tan(th) / std::sqrt(std::pow(v, p) - 1.0L);
    return 2.0L * v * ratio * std::pow(sh2 * v * v + 1.0L, -1.5L);
  };
  return std::cosh(a) * simpson(f, 0.0L, kPi / 2, panels);
}

/// 2 int_a^{rho_max} |A|^n d mu / d rho, with
/// |A|^2 = n(n-1) (sinh^{n-1}(a) cosh(rho) / sinh^n(rho))^2 and
/// d mu / d rho = sinh^{n-1}(rho) / v_a(rho); substituted rho = a + s^2.
inline Real total_extrinsic_trapezoid(int n, Real a, Real rho_max, long panels = 1000000) {
  const Real sa = std::sinh(a);
  const Real p = 2.0L * n - 2.0L;
  auto normA = [&](Real rho) {
    return std::sqrt(Real(n) * (n - 1)) * std::pow(sa, n - 1) * std::cosh(rho) /
           std::pow(std::sinh(rho), n);
  };
  auto f = [&](Real s) -> Real {
    const Real rho = a + s * s;
    // 2 s / v_a(rho) with v_a = sqrt(1 - (sinh a / sinh rho)^{2n-2}).
    Real weight;
    if (s == 0.0L) {
      weight = 2.0L / std::sqrt(p * std::cosh(a) / sa);
    } else {
      const Real q = std::pow(sa / std::sinh(rho), p);
      weight = 2.0L * s / std::sqrt(1.0L - q);
    }
    return std::pow(normA(rho), n) * std::pow(std::sinh(rho), n - 1) * weight;
  };
  return 2.0L * trapezoid(f, 0.0L, std::sqrt(rho_max - a), panels);
}

/// T(a) = sinh(a) int_1^inf (v^{2n-2}-1)^{-1/2} (sinh^2(a) v^2 + 1)^{-1/2} dv
/// with the same v = sec^2(theta) map as constant_C_simpson.
inline Real half_height_simpson(int n, Real a, long panels = 200000) {
  const Real sh = std::sinh(a);
  const Real p = 2.0L * n - 2.0L;
  auto f = [&](Real th) -> Real {
    if (th >= kPi / 2) return 0.0L;
    const Real c = std::cos(th);
    const Real v = 1.0L / (c * c);
    const Real ratio = th == 0.0L ? 1.0L / std::sqrt(p) : std::tan(th) / std::sqrt(std::pow(v, p) - 1.0L);
    return 2.0L * v * ratio / std::sqrt(sh * sh * v * v + 1.0L);
  };
  return sh * simpson(f, 0.0L, kPi / 2, panels);
}

/// h_T for the bigraph with neck a: 2 int_a^inf q (1 - q^2)^{-1/2} d rho with
/// q = (cosh a / cosh rho)^{n-1}; rho = a + s^2, truncated where q < 1e-40.
inline Real translation_height_trapezoid(int n, Real a, long panels = 2000000) {
  const Real m = n - 1.0L;
  auto f = [&](Real s) -> Real {
    if (s == 0.0L) return 2.0L / std::sqrt(2.0L * m * std::tanh(a));
    const Real rho = a + s * s;
    const Real q = std::exp(m * (std::log(std::cosh(a)) - std::log(std::cosh(rho))));
    return 2.0L * s * q / std::sqrt(1.0L - q * q);
  };
  const Real span = 92.0L / m + 2.0L;
  return 2.0L * trapezoid(f, 0.0L, std::sqrt(span), panels);
}

/// Central difference of g at x with step h.
inline double central(const std::function<double(double)>& g, double x, double h) {
  return (g(x + h) - g(x - h)) / (2.0 * h);
}

}  // namespace oracle
