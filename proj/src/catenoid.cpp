#include "minhyp/catenoid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "minhyp/errors.hpp"
#include "minhyp/hyperbolic.hpp"
#include "minhyp/roots.hpp"
#include "ode_util.hpp"

namespace minhyp {

namespace {

void require_parameters(int n, double a) {
  if (n < 2) throw DomainError("catenoid dimension n must be >= 2");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("catenoid neck radius a must be > 0");
}

quad::TailPolicy tail_from(double start, bool singular) {
  quad::TailPolicy p;
  p.start_offset = start;
  p.singular_start = singular;
  return p;
}

quad::QuadratureResult half_height_direct(int n, double a, const quad::Tolerance& tol) {
  quad::SingularIntegrandSpec spec{[n, a](double d) { return lambda_integrand(n, a, d); }, a,
                                   INFINITY, static_cast<double>(n - 1)};
  return quad::integrate_exponential_tail(spec, tail_from(1.0, true), tol);
}

quad::QuadratureResult constant_C_direct(int n, double a, const quad::Tolerance& tol) {
  quad::SingularIntegrandSpec spec{[n, a](double d) { return b_integrand(n, a, d); }, a,
                                   INFINITY, static_cast<double>(n - 1)};
  return quad::integrate_exponential_tail(spec, tail_from(1.0, true), tol);
}

quad::QuadratureResult lambda_direct(int n, double a, double rho, const quad::Tolerance& tol) {
  if (!(rho >= a)) throw DomainError("lambda(a, rho) needs rho >= a");
  if (rho == a) return {};
  quad::SingularIntegrandSpec spec{[n, a](double d) { return lambda_integrand(n, a, d); }, a, rho,
                                   0.0};
  return quad::integrate_sqrt_singularity(spec, tol);
}

using State2 = std::array<double, 2>;
using State4 = std::array<double, 4>;

}  // namespace

double lambda_integrand(int n, double a, double delta) {
  const double L = hyp::log_sinh_ratio(a, delta);
  return std::exp(-(n - 1) * L) / std::sqrt(-std::expm1(-(2.0 * n - 2.0) * L));
}

double b_integrand(int n, double a, double delta) {
  const double sech = hyp::sech(a + delta);
  return hyp::coth(a) * sech * sech * lambda_integrand(n, a, delta);
}

// ---------------------------------------------------------------------------

Catenoid::Catenoid(int n, double a, CatenoidOptions options)
    : n_(n), a_(a), options_(options) {
  require_parameters(n, a);
  rho_max_ = options_.rho_max.value_or(40.0 + 5.0 * a);
  if (!(rho_max_ > a)) throw DomainError("rho_max must exceed the neck radius");
  half_height_ = half_height_direct(n, a, options_.tolerance);
  constant_C_ = constant_C_direct(n, a, options_.tolerance);

  // f_t^2 = R^{2n-2} - 1 with R = sinh(f)/sinh(a).
  const double s = options_.slope_switch;
  const double log_R = std::log1p(s * s) / (2.0 * n - 2.0);
  switch_rho_ = std::asinh(std::exp(log_R + hyp::log_sinh(a)));
  switch_height_ = lambda(switch_rho_);
}

double Catenoid::lambda(double rho) const { return lambda_result(rho).value; }

quad::QuadratureResult Catenoid::lambda_result(double rho) const {
  if (!(rho >= a_)) throw DomainError("lambda(a, rho) needs rho >= a");
  if (rho - a_ <= 1.0) return lambda_direct(n_, a_, rho, options_.tolerance);
  quad::QuadratureResult tail = lambda_complement(rho);
  tail.value = half_height_.value - tail.value;
  tail.error_estimate += half_height_.error_estimate;
  return tail;
}

quad::QuadratureResult Catenoid::lambda_complement(double rho) const {
  if (!(rho >= a_)) throw DomainError("lambda(a, rho) needs rho >= a");
  if (rho == a_) return half_height_;
  const int n = n_;
  const double a = a_;
  const double offset = rho - a;
  quad::SingularIntegrandSpec spec{
      [n, a, offset](double d) { return lambda_integrand(n, a, offset + d); }, rho, INFINITY,
      static_cast<double>(n - 1)};
  return quad::integrate_exponential_tail(spec, tail_from(1.0, false), options_.tolerance);
}

double Catenoid::lambda_rho(double rho) const {
  if (!(rho > a_)) throw DomainError("lambda_rho needs rho > a");
  return lambda_integrand(n_, a_, rho - a_);
}

quad::QuadratureResult Catenoid::lambda_v_form(double rho) const {
  if (!(rho >= a_)) throw DomainError("lambda(a, rho) needs rho >= a");
  if (rho == a_) return {};
  const int n = n_;
  const double sa2 = std::sinh(a_) * std::sinh(a_);
  // Offset w = v - 1; v^{2n-2} - 1 = expm1((2n-2) log1p(w)).
  auto integrand = [n, sa2](double w) {
    const double v = 1.0 + w;
    return 1.0 / std::sqrt(std::expm1((2.0 * n - 2.0) * std::log1p(w)) * (sa2 * v * v + 1.0));
  };
  const double upper = std::expm1(hyp::log_sinh_ratio(a_, rho - a_));
  quad::SingularIntegrandSpec spec{integrand, 1.0, 1.0 + upper, 0.0};
  quad::Tolerance tol = options_.tolerance;
  tol.max_panels = 20000;
  quad::QuadratureResult r = quad::integrate_sqrt_singularity(spec, tol);
  r.value *= std::sinh(a_);
  r.error_estimate *= std::sinh(a_);
  return r;
}

double Catenoid::profile_inverse(double t) const {
  const double target = std::fabs(t);
  const double T = half_height();
  if (!(target < T))
    throw DomainError("profile_inverse needs |t| < T(a) = " + std::to_string(T));
  if (target == 0.0) return a_;

  // Near the top, match the complement T - lambda instead of lambda itself.
  const bool use_complement = target > 0.5 * T;
  auto F = [&](double rho) {
    if (use_complement) return (T - target) - lambda_complement(rho).value;
    return lambda(rho) - target;
  };
  double hi = a_ + 1.0;
  double f_hi = F(hi);
  while (f_hi < 0.0) {
    hi = a_ + 2.0 * (hi - a_);
    if (hi > a_ + 800.0) throw InternalError("profile_inverse: could not bracket the root");
    f_hi = F(hi);
  }
  const double f_lo = use_complement ? (T - target) - half_height_.value : -target;
  return find_root(F, a_, hi, 1e-12, f_lo, f_hi);
}

std::vector<RotationProfilePoint> Catenoid::profile_ode(std::span<const double> t_grid) const {
  for (double t : t_grid) {
    if (!std::isfinite(t) || std::fabs(t) >= half_height())
      throw DomainError("profile_ode: |t| must stay below T(a) = " +
                        std::to_string(half_height()));
    if (std::fabs(t) > switch_height_ * (1.0 + 1e-12))
      throw DomainError("profile_ode: |t| beyond the ODE range (f_t > slope_switch); use profile()");
  }
  const int n = n_;
  auto rhs = [n](const State2& y, State2& dy, double) {
    dy[0] = y[1];
    dy[1] = (n - 1) * hyp::coth(y[0]) * (1.0 + y[1] * y[1]);
  };
  std::vector<RotationProfilePoint> out(t_grid.size());
  detail::integrate_symmetric(t_grid, State2{a_, 0.0}, rhs, options_.ode_abs_tol, options_.ode_rel_tol,
                    [&](std::size_t i, const State2& y) {
                      const double t = t_grid[i];
                      const double ft = t < 0.0 ? -y[1] : y[1];
                      out[i] = {t, y[0], ft, (n - 1) * hyp::coth(y[0]) * (1.0 + y[1] * y[1])};
                    });
  return out;
}

std::vector<ProfileSensitivity> Catenoid::profile_sensitivity(
    std::span<const double> t_grid) const {
  for (double t : t_grid)
    if (!std::isfinite(t) || std::fabs(t) > switch_height_ * (1.0 + 1e-12))
      throw DomainError("profile_sensitivity: |t| beyond the ODE range");
  const int n = n_;
  // (f, f_t, g = f_a, g_t): g'' is the linearisation of the profile equation.
  auto rhs = [n](const State4& y, State4& dy, double) {
    const double c = hyp::coth(y[0]);
    const double q = 1.0 + y[1] * y[1];
    dy[0] = y[1];
    dy[1] = (n - 1) * c * q;
    dy[2] = y[3];
    dy[3] = (n - 1) * (-hyp::csch2(y[0]) * q * y[2] + 2.0 * c * y[1] * y[3]);
  };
  std::vector<ProfileSensitivity> out(t_grid.size());
  detail::integrate_symmetric(t_grid, State4{a_, 0.0, 1.0, 0.0}, rhs, options_.ode_abs_tol,
                    options_.ode_rel_tol, [&](std::size_t i, const State4& y) {
                      const double t = t_grid[i];
                      const double sign = t < 0.0 ? -1.0 : 1.0;
                      out[i] = {t, y[0], sign * y[1], y[2], sign * y[3]};
                    });
  return out;
}

std::vector<RotationProfilePoint> Catenoid::profile(std::span<const double> t_grid) const {
  std::vector<double> inner;
  std::vector<std::size_t> inner_index;
  std::vector<RotationProfilePoint> out(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    if (!std::isfinite(t) || std::fabs(t) >= half_height())
      throw DomainError("profile: |t| must stay below T(a)");
    if (std::fabs(t) <= switch_height_) {
      inner.push_back(t);
      inner_index.push_back(i);
    } else {
      RotationProfilePoint p = point_at_rho(profile_inverse(t));
      p.t = t;
      if (t < 0.0) p.f_t = -p.f_t;
      out[i] = p;
    }
  }
  const auto ode = profile_ode(inner);
  for (std::size_t k = 0; k < ode.size(); ++k) out[inner_index[k]] = ode[k];
  return out;
}

RotationProfilePoint Catenoid::point_at_rho(double rho) const {
  if (!(rho >= a_)) throw DomainError("point_at_rho needs rho >= a");
  const double L = hyp::log_sinh_ratio(a_, rho - a_);
  const double R2 = std::exp((2.0 * n_ - 2.0) * L);  // 1 + f_t^2
  RotationProfilePoint p;
  p.t = lambda(rho);
  p.f = rho;
  p.f_t = std::sqrt(std::expm1((2.0 * n_ - 2.0) * L));
  p.f_tt = (n_ - 1) * hyp::coth(rho) * R2;
  return p;
}

ExtrinsicData Catenoid::extrinsic_data(double rho) const {
  if (!(rho >= a_)) throw DomainError("extrinsic_data needs rho >= a");
  const double L = hyp::log_sinh_ratio(a_, rho - a_);
  const double log_ka = (n_ - 1) * hyp::log_sinh(a_) + hyp::log_cosh(rho) - n_ * hyp::log_sinh(rho);
  ExtrinsicData d;
  d.normA2 = n_ * (n_ - 1.0) * std::exp(2.0 * log_ka);
  const double v2 = -std::expm1(-(2.0 * n_ - 2.0) * L);
  d.v = std::sqrt(v2);
  d.density = v2 > 0.0 ? std::exp((n_ - 1) * hyp::log_sinh(rho)) / d.v : INFINITY;
  return d;
}

// ---------------------------------------------------------------------------

double lambda(int n, double a, double rho) {
  require_parameters(n, a);
  return lambda_direct(n, a, rho, {}).value;
}

double half_height(int n, double a) {
  require_parameters(n, a);
  return half_height_direct(n, a, {}).value;
}

double height(int n, double a) { return 2.0 * half_height(n, a); }

quad::QuadratureResult height_derivative(int n, double a) {
  require_parameters(n, a);
  return constant_C_direct(n, a, {});
}

std::vector<RotationProfilePoint> profile_ode(int n, double a, std::span<const double> t_grid) {
  return Catenoid(n, a).profile_ode(t_grid);
}

double profile_inverse(int n, double a, double t) { return Catenoid(n, a).profile_inverse(t); }

ExtrinsicData extrinsic_data(int n, double a, double rho) {
  require_parameters(n, a);
  return Catenoid(n, a).extrinsic_data(rho);
}

IntersectionResult intersect_catenaries(int n, double a, double b) {
  if (a == b) throw DomainError("intersect_catenaries: degenerate pair a == b");
  return intersect_catenaries(Catenoid(n, std::min(a, b)), Catenoid(n, std::max(a, b)));
}

IntersectionResult intersect_catenaries(const Catenoid& ca, const Catenoid& cb) {
  if (ca.n() != cb.n()) throw DomainError("intersect_catenaries: dimensions differ");
  if (ca.a() == cb.a()) throw DomainError("intersect_catenaries: degenerate pair a == b");
  const Catenoid& small = ca.a() < cb.a() ? ca : cb;
  const Catenoid& large = ca.a() < cb.a() ? cb : ca;
  const double b = large.a();
  // lambda(a, .) - lambda(b, .) is positive at rho = b (lambda(b, b) = 0) and
  // tends to T(a) - T(b) < 0.
  auto D = [&](double rho) { return small.lambda(rho) - large.lambda(rho); };

  const double rho_hi = std::max(small.rho_max(), large.rho_max());
  constexpr int samples = 240;
  std::vector<double> rho(samples);
  std::vector<double> values(samples);
  for (int i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i + 1) / samples;
    rho[i] = b + (rho_hi - b) * s * s;
    values[i] = D(rho[i]);
  }
  // Prepend rho = b itself.
  rho.insert(rho.begin(), b);
  values.insert(values.begin(), small.lambda(b));

  const auto changes = sign_changes(values);
  if (changes.empty()) throw InternalError("intersect_catenaries: no sign change found");
  IntersectionResult r;
  r.count = static_cast<int>(changes.size());
  const std::size_t i = changes.front();
  r.rho_star = find_root(D, rho[i], rho[i + 1], 1e-12, values[i], values[i + 1]);
  r.t_star = small.lambda(r.rho_star);
  return r;
}

double sphere_area(int n) {
  if (n < 1) throw DomainError("sphere_area needs n >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

CurvatureIntegral total_extrinsic_curvature(const Catenoid& c, bool include_sphere_area) {
  const int n = c.n();
  const double a = c.a();
  const double log_sa = hyp::log_sinh(a);
  auto integrand = [n, a, log_sa](double d) {
    const double rho = a + d;
    const double L = hyp::log_sinh_ratio(a, d);
    const double log_ls = hyp::log_sinh(rho);
    const double log_ka = (n - 1) * log_sa + hyp::log_cosh(rho) - n * log_ls;
    const double log_pref = 0.5 * n * std::log(n * (n - 1.0));
    return std::exp(log_pref + n * log_ka + (n - 1) * log_ls) /
           std::sqrt(-std::expm1(-(2.0 * n - 2.0) * L));
  };
  quad::SingularIntegrandSpec spec{integrand, a, INFINITY, static_cast<double>(n - 1)};
  const quad::QuadratureResult r =
      quad::integrate_exponential_tail(spec, tail_from(1.0, true), c.options().tolerance);
  const double factor = 2.0 * (include_sphere_area ? sphere_area(n) : 1.0);
  return {factor * r.value, factor * r.error_estimate, factor * r.tail_bound, include_sphere_area};
}

CurvatureIntegral total_extrinsic_curvature(int n, double a, bool include_sphere_area) {
  return total_extrinsic_curvature(Catenoid(n, a), include_sphere_area);
}

CurvatureIntegral intrinsic_curvature_partial(double a, double rho_max) {
  require_parameters(2, a);
  if (!(rho_max > a)) throw DomainError("intrinsic_curvature_partial needs rho_max > a");
  auto integrand = [a](double d) {
    const double rho = a + d;
    const double L = hyp::log_sinh_ratio(a, d);
    const double v2 = -std::expm1(-2.0 * L);
    const double ka = std::exp(hyp::log_sinh(a) + hyp::log_cosh(rho) - 2.0 * hyp::log_sinh(rho));
    const double normA2 = 2.0 * ka * ka;
    const double sinh_rho = std::exp(hyp::log_sinh(rho));
    return (v2 + 0.5 * normA2) * sinh_rho / std::sqrt(v2);
  };
  quad::SingularIntegrandSpec spec{integrand, a, rho_max, 0.0};
  const quad::QuadratureResult r = quad::integrate_sqrt_singularity(spec);
  return {2.0 * r.value, 2.0 * r.error_estimate, 0.0, false};
}

double fit_exponential_rate(std::span<const double> x, std::span<const double> values) {
  if (x.size() != values.size() || x.size() < 2)
    throw std::invalid_argument("fit_exponential_rate needs matching samples (>= 2)");
  const double m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(values[i] > 0.0)) throw DomainError("fit_exponential_rate needs positive values");
    const double y = std::log(values[i]);
    sx += x[i];
    sy += y;
    sxx += x[i] * x[i];
    sxy += x[i] * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace minhyp
