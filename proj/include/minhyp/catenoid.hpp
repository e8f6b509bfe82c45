#pragma once

// The rotational catenoids C_a of H^n x R: neck radius a > 0, generating
// curve t -> (tanh(f(a,t)/2), t) on ]-T(a), T(a)[.
//
// Two independent representations of the profile are kept:
//   * f(a, t) from the Cauchy problem f'' = (n-1) coth(f) (1 + f'^2),
//     f(0) = a, f'(0) = 0, integrated with an adaptive Runge-Kutta scheme;
//   * its inverse lambda(a, rho), a quadrature with an inverse square-root
//     singularity at rho = a.
// The ODE covers |t| up to the height where f_t reaches 1e3; past that the
// profile is recovered from lambda.

#include <optional>
#include <span>
#include <vector>

#include "minhyp/hgeom.hpp"
#include "minhyp/quad.hpp"

namespace minhyp {

struct CatenoidOptions {
  std::optional<double> rho_max;  // "infinity" for sampling; 40 + 5a if unset
  quad::Tolerance tolerance{};
  double ode_rel_tol = 1e-13;
  double ode_abs_tol = 1e-14;
  double slope_switch = 1e3;  // f_t beyond which the rho representation is used
};

/// Extrinsic data of the upper half-catenoid at distance rho from the axis.
struct ExtrinsicData {
  double normA2 = 0.0;
  double v = 0.0;
  double density = 0.0;  // d mu / (d rho d mu_S); +inf at rho = a
};

/// Profile sample together with the a-derivative of f, obtained from the
/// variational equation integrated alongside the profile.
struct ProfileSensitivity {
  double t = 0.0;
  double f = 0.0;
  double f_t = 0.0;
  double f_a = 0.0;
  double f_at = 0.0;
};

struct IntersectionResult {
  double rho_star = 0.0;
  double t_star = 0.0;
  int count = 0;  // intersections with t > 0
};

struct CurvatureIntegral {
  double value = 0.0;
  double error_estimate = 0.0;
  double tail_bound = 0.0;
  bool sphere_area_included = false;
};

/// Immutable catenoid C_a with cached half-height T(a) and C(a) = T'(a).
class Catenoid {
 public:
  Catenoid(int n, double a, CatenoidOptions options = {});

  int n() const { return n_; }
  double a() const { return a_; }
  const CatenoidOptions& options() const { return options_; }
  double rho_max() const { return rho_max_; }

  /// T(a) = lim lambda(a, rho); h_R(a) = 2 T(a).
  double half_height() const { return half_height_.value; }
  const quad::QuadratureResult& half_height_result() const { return half_height_; }
  double height() const { return 2.0 * half_height_.value; }

  /// C(a) = cosh(a) int_1^inf (v^{2n-2}-1)^{-1/2} (sinh^2(a) v^2 + 1)^{-3/2} dv,
  /// which is also T'(a).
  double constant_C() const { return constant_C_.value; }
  const quad::QuadratureResult& constant_C_result() const { return constant_C_; }

  /// Height where f_t reaches options().slope_switch.
  double switch_height() const { return switch_height_; }
  double switch_rho() const { return switch_rho_; }

  /// lambda(a, rho), the inverse of f(a, .) on [0, T(a)[. rho >= a.
  double lambda(double rho) const;
  quad::QuadratureResult lambda_result(double rho) const;
  /// T(a) - lambda(a, rho), computed directly as the tail integral.
  quad::QuadratureResult lambda_complement(double rho) const;
  /// lambda_rho(a, rho) = sinh^{n-1}(a) (sinh^{2n-2} rho - sinh^{2n-2} a)^{-1/2}.
  double lambda_rho(double rho) const;
  /// lambda through the substitution v = sinh(u)/sinh(a).
  quad::QuadratureResult lambda_v_form(double rho) const;

  /// f(a, |t|) by root-finding on lambda. |t| < T(a).
  double profile_inverse(double t) const;

  /// ODE samples at arbitrary t (any order, either sign; f even, f_t odd).
  /// Throws DomainError past the ODE range |t| <= switch_height().
  std::vector<RotationProfilePoint> profile_ode(std::span<const double> t_grid) const;
  std::vector<ProfileSensitivity> profile_sensitivity(std::span<const double> t_grid) const;

  /// ODE where it is valid, lambda inversion beyond. |t| < T(a).
  std::vector<RotationProfilePoint> profile(std::span<const double> t_grid) const;

  /// Exact profile point on the upper half at distance rho (first integral).
  RotationProfilePoint point_at_rho(double rho) const;

  ExtrinsicData extrinsic_data(double rho) const;

 private:
  int n_;
  double a_;
  CatenoidOptions options_;
  double rho_max_;
  quad::QuadratureResult half_height_;
  quad::QuadratureResult constant_C_;
  double switch_rho_ = 0.0;
  double switch_height_ = 0.0;
};

/// Integrand of lambda in the offset delta = u - a:
/// (sinh a / sinh u)^{n-1} (1 - (sinh a / sinh u)^{2n-2})^{-1/2}.
double lambda_integrand(int n, double a, double delta);
/// coth(a) sech^2(a + delta) times lambda_integrand; integrates to B_1(a, rho)
/// over [a, rho] and to C(a) over [a, inf).
double b_integrand(int n, double a, double delta);

double lambda(int n, double a, double rho);
double half_height(int n, double a);
double height(int n, double a);
/// T'(a) = cosh(a) int_1^inf (v^{2n-2}-1)^{-1/2} (sinh^2(a) v^2 + 1)^{-3/2} dv.
quad::QuadratureResult height_derivative(int n, double a);
std::vector<RotationProfilePoint> profile_ode(int n, double a, std::span<const double> t_grid);
double profile_inverse(int n, double a, double t);
ExtrinsicData extrinsic_data(int n, double a, double rho);

/// Positive-height intersection of the catenaries C_a and C_b, a != b.
IntersectionResult intersect_catenaries(int n, double a, double b);
IntersectionResult intersect_catenaries(const Catenoid& ca, const Catenoid& cb);

/// Area of the unit sphere S^{n-1}.
double sphere_area(int n);

/// int |A|^n d mu over the whole catenoid, sphere factor optional.
CurvatureIntegral total_extrinsic_curvature(const Catenoid& c, bool include_sphere_area = false);
CurvatureIntegral total_extrinsic_curvature(int n, double a, bool include_sphere_area = false);

/// n = 2: int |K| d mu over the band f <= rho_max of both halves.
CurvatureIntegral intrinsic_curvature_partial(double a, double rho_max);

/// Least-squares slope of log(values) against x.
double fit_exponential_rate(std::span<const double> x, std::span<const double> values);

}  // namespace minhyp
