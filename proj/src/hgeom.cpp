#include "minhyp/hgeom.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "minhyp/errors.hpp"
#include "minhyp/hyperbolic.hpp"

namespace minhyp {

namespace {

void require_dimension(int n) {
  if (n < 2) throw DomainError("dimension n must be >= 2, got " + std::to_string(n));
}

void require_rotation_point(const RotationProfilePoint& p) {
  if (!std::isfinite(p.t) || !std::isfinite(p.f) || !std::isfinite(p.f_t) ||
      !std::isfinite(p.f_tt))
    throw DomainError("non-finite rotation profile point");
  if (p.f <= 0.0)
    throw DomainError("rotation profile needs f > 0 (distance to the axis), got " +
                      std::to_string(p.f));
}

void require_translation_point(const TranslationProfilePoint& p) {
  if (!std::isfinite(p.rho) || !std::isfinite(p.mu) || !std::isfinite(p.mu_dot) ||
      !std::isfinite(p.mu_ddot))
    throw DomainError("non-finite translation profile point");
}

void require_stencil(std::span<const StencilPoint> s) {
  if (s.size() != 3)
    throw std::invalid_argument("radial stencil needs exactly 3 points, got " +
                                std::to_string(s.size()));
  if (!(s[0].x < s[1].x && s[1].x < s[2].x))
    throw std::invalid_argument("radial stencil coordinates must increase");
}

}  // namespace

MetricData metric_rotation(const RotationProfilePoint& p, int n) {
  require_dimension(n);
  require_rotation_point(p);
  const double ls = hyp::log_sinh(p.f);
  const double root_g = std::hypot(1.0, p.f_t);
  MetricData m;
  m.g_tt = root_g * root_g;
  m.warp = std::exp(2.0 * ls);
  m.density = std::exp(std::log(root_g) + (n - 1) * ls);
  return m;
}

CurvatureRecord curvatures_rotation(const RotationProfilePoint& p, int n) {
  require_dimension(n);
  require_rotation_point(p);
  const double s = 1.0 / std::hypot(1.0, p.f_t);  // (1+f_t^2)^{-1/2}
  CurvatureRecord c;
  c.k_meridian = -p.f_tt * s * s * s;
  c.k_sphere = hyp::coth(p.f) * s;
  c.H = (c.k_meridian + (n - 1) * c.k_sphere) / n;
  c.v = p.f_t * s;
  c.normA2 = c.k_meridian * c.k_meridian + (n - 1) * c.k_sphere * c.k_sphere;
  if (n == 2) c.K = gauss_curvature_2d(c.normA2, c.v);
  return c;
}

CurvatureRecord curvatures_translation(const TranslationProfilePoint& p, int n) {
  require_dimension(n);
  require_translation_point(p);
  const double s = 1.0 / std::hypot(1.0, p.mu_dot);
  CurvatureRecord c;
  c.k_meridian = p.mu_ddot * s * s * s;
  c.k_sphere = p.mu_dot * s * std::tanh(p.rho);
  c.H = (c.k_meridian + (n - 1) * c.k_sphere) / n;
  c.v = s;
  c.normA2 = c.k_meridian * c.k_meridian + (n - 1) * c.k_sphere * c.k_sphere;
  if (n == 2) c.K = gauss_curvature_2d(c.normA2, c.v);
  return c;
}

double gauss_curvature_2d(double normA2, double v) {
  if (!(normA2 >= 0.0)) throw DomainError("|A|^2 must be nonnegative");
  if (!(std::fabs(v) <= 1.0 + 1e-12))
    throw DomainError("vertical normal component must lie in [-1, 1]");
  return -0.5 * normA2 - v * v;
}

double jacobi_potential(int n, double normA2, double v) {
  return (n - 1) * (1.0 - v * v) - normA2;
}

double rotation_flux(const RotationProfilePoint& p, int n) {
  require_dimension(n);
  require_rotation_point(p);
  return std::exp((n - 1) * hyp::log_sinh(p.f)) / std::hypot(1.0, p.f_t);
}

double translation_flux(const TranslationProfilePoint& p, int n) {
  require_dimension(n);
  require_translation_point(p);
  return p.mu_dot / std::hypot(1.0, p.mu_dot) *
         std::exp((n - 1) * hyp::log_cosh(p.rho));
}

StencilPoint stencil_point(const RotationProfilePoint& p, int n) {
  const MetricData m = metric_rotation(p, n);
  const CurvatureRecord c = curvatures_rotation(p, n);
  return {p.t, m.g_tt, m.density, std::sinh(p.f), c.normA2, c.v};
}

StencilPoint stencil_point(const TranslationProfilePoint& p, int n) {
  const CurvatureRecord c = curvatures_translation(p, n);
  const double g = 1.0 + p.mu_dot * p.mu_dot;
  const double G = std::cosh(p.rho);
  return {p.rho, g, std::sqrt(g) * std::pow(G, n - 1), G, c.normA2, c.v};
}

double radial_laplacian(std::span<const StencilPoint> s, std::span<const double> u) {
  require_stencil(s);
  if (u.size() != 3) throw std::invalid_argument("radial stencil needs 3 values");
  auto flux_coeff = [](const StencilPoint& q) { return q.density / q.g_xx; };
  const double p_minus = 0.5 * (flux_coeff(s[0]) + flux_coeff(s[1]));
  const double p_plus = 0.5 * (flux_coeff(s[1]) + flux_coeff(s[2]));
  const double h_minus = s[1].x - s[0].x;
  const double h_plus = s[2].x - s[1].x;
  const double div = (p_plus * (u[2] - u[1]) / h_plus - p_minus * (u[1] - u[0]) / h_minus) /
                     (0.5 * (h_plus + h_minus));
  return div / s[1].density;
}

double simons_residual(std::span<const StencilPoint> s) {
  require_stencil(s);
  constexpr double eps = 1e-14;
  const double u[3] = {std::sqrt(s[0].normA2 + eps * eps), std::sqrt(s[1].normA2 + eps * eps),
                       std::sqrt(s[2].normA2 + eps * eps)};
  const double lap = radial_laplacian(s, u);
  const double u0 = u[1];
  return u0 * u0 * u0 * u0 + 4.0 * u0 * u0 + u0 * lap;
}

double vertical_jacobi_residual(std::span<const StencilPoint> s) {
  require_stencil(s);
  const double v[3] = {s[0].v, s[1].v, s[2].v};
  const double lap = radial_laplacian(s, v);
  const double v0 = s[1].v;
  return lap + v0 * v0 * v0 + (s[1].normA2 - 1.0) * v0;
}

double warped_gauss_curvature(std::span<const StencilPoint> s) {
  require_stencil(s);
  const double h_minus = s[1].x - s[0].x;
  const double h_plus = s[2].x - s[1].x;
  const double e_minus = std::sqrt(0.5 * (s[0].g_xx + s[1].g_xx));
  const double e_plus = std::sqrt(0.5 * (s[1].g_xx + s[2].g_xx));
  const double q_minus = (s[1].warp_sqrt - s[0].warp_sqrt) / h_minus / e_minus;
  const double q_plus = (s[2].warp_sqrt - s[1].warp_sqrt) / h_plus / e_plus;
  const double dq = (q_plus - q_minus) / (0.5 * (h_plus + h_minus));
  return -dq / (s[1].warp_sqrt * std::sqrt(s[1].g_xx));
}

}  // namespace minhyp
