#pragma once

// Pointwise geometry of rotation- and translation-invariant hypersurfaces in
// H^n x R, and the two-dimensional identities (Gauss equation, Simons
// inequality, vertical Jacobi field) evaluated on radial stencils.

#include <optional>
#include <span>

namespace minhyp {

/// One sample of a rotational generating curve (tanh(f/2), t): f is the
/// hyperbolic distance to the vertical axis at height t.
struct RotationProfilePoint {
  double t = 0.0;
  double f = 0.0;
  double f_t = 0.0;
  double f_tt = 0.0;
};

/// One sample of a translation-invariant generating curve
/// (tanh(rho/2), mu(rho)); rho is the signed distance to the hyperplane.
struct TranslationProfilePoint {
  double rho = 0.0;
  double mu = 0.0;
  double mu_dot = 0.0;
  double mu_ddot = 0.0;
};

/// Induced metric g = g_tt dt^2 + warp g_S and measure density dt dmu_S.
struct MetricData {
  double g_tt = 1.0;
  double warp = 0.0;
  double density = 0.0;
};

/// Principal curvatures with respect to the chosen unit normal. For
/// translation surfaces k_meridian is k_G and k_sphere is k_E (multiplicity
/// n-1 in both cases).
struct CurvatureRecord {
  double k_meridian = 0.0;
  double k_sphere = 0.0;
  double H = 0.0;
  double v = 0.0;
  double normA2 = 0.0;
  std::optional<double> K;  // intrinsic Gauss curvature, n = 2 only
};

MetricData metric_rotation(const RotationProfilePoint& p, int n);

CurvatureRecord curvatures_rotation(const RotationProfilePoint& p, int n);

CurvatureRecord curvatures_translation(const TranslationProfilePoint& p, int n);

/// K = -|A|^2/2 - v^2 on a minimal surface of H^2 x R.
double gauss_curvature_2d(double normA2, double v);

/// Zeroth-order term of the Jacobi operator J = -Laplacian + potential:
/// (n-1)(1-v^2) - |A|^2.
double jacobi_potential(int n, double normA2, double v);

/// sinh^{n-1}(f) (1+f_t^2)^{-1/2}; its t-derivative is n f_t sinh^{n-1}(f) H,
/// so it is constant along minimal rotation profiles.
double rotation_flux(const RotationProfilePoint& p, int n);

/// mu_dot (1+mu_dot^2)^{-1/2} cosh^{n-1}(rho); constant (= d) along minimal
/// translation profiles.
double translation_flux(const TranslationProfilePoint& p, int n);

/// Sample of a radial function on a one-variable warped metric
/// g_xx dx^2 + warp g_fiber, with the volume density of that metric and the
/// extrinsic data needed by the Simons and Jacobi residuals.
struct StencilPoint {
  double x = 0.0;
  double g_xx = 1.0;
  double density = 1.0;
  double warp_sqrt = 1.0;  // G, the fiber scale factor
  double normA2 = 0.0;
  double v = 0.0;
};

StencilPoint stencil_point(const RotationProfilePoint& p, int n);
StencilPoint stencil_point(const TranslationProfilePoint& p, int n);

/// Laplacian of a radial function at the middle node of a 3-point stencil,
/// density^{-1} d/dx(density g_xx^{-1} du/dx) by central differences.
/// Throws std::invalid_argument unless exactly three points with strictly
/// increasing x are given.
double radial_laplacian(std::span<const StencilPoint> s,
                        std::span<const double> u);

/// u^4 + 4u^2 + u Lap(u) at the middle node, u = |A| smoothed as
/// sqrt(|A|^2 + 1e-28). Nonnegative wherever Simons' inequality holds (n=2).
double simons_residual(std::span<const StencilPoint> s);

/// Lap(v) + v^3 + (|A|^2 - 1) v at the middle node; vanishes up to O(h^2) on
/// minimal surfaces of H^2 x R.
double vertical_jacobi_residual(std::span<const StencilPoint> s);

/// Intrinsic curvature of g_xx dx^2 + G^2 dtheta^2 at the middle node,
/// -(G sqrt(g_xx))^{-1} d/dx(G_x / sqrt(g_xx)), by central differences.
double warped_gauss_curvature(std::span<const StencilPoint> s);

}  // namespace minhyp
