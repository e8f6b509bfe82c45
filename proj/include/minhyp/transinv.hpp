#pragma once

// Minimal hypersurfaces M_d of H^n x R invariant under hyperbolic
// translations. The generating curve (tanh(rho/2), mu(rho)) satisfies the
// first integral
//   mu_dot (1 + mu_dot^2)^{-1/2} cosh^{n-1}(rho) = d,
// so mu_dot = d (cosh^{2n-2} rho - d^2)^{-1/2}. Three regimes:
//   d > 1  bigraph over rho >= a, cosh^{n-1}(a) = d, height h_T(d)
//   d = 1  graph over rho > 0, mu -> -inf at rho = 0
//   d < 1  entire graph, mu odd in rho, finite height

#include <span>
#include <string>
#include <vector>

#include "minhyp/catenoid.hpp"
#include "minhyp/hgeom.hpp"
#include "minhyp/quad.hpp"

namespace minhyp {

enum class Regime { graph_entire, graph_half, bigraph };

const char* regime_name(Regime r);

struct TranslationSurface {
  int n = 2;
  double d = 1.0;
  Regime regime = Regime::graph_half;
  double a = 0.0;  // bigraph only: cosh^{n-1}(a) = d
};

/// Regime from d; d == 1 exactly selects the half graph.
TranslationSurface make_translation_surface(int n, double d);
/// Bigraph with neck distance a > 0 (d = cosh^{n-1}(a), no rounding of a).
TranslationSurface translation_surface_from_neck(int n, double a);

/// acosh(d^{1/(n-1)}), accurate for d close to 1.
double neck_from_d(int n, double d);

/// mu_+(a, rho) = cosh^{n-1}(a) int_a^rho (cosh^{2n-2} r - cosh^{2n-2} a)^{-1/2} dr.
/// rho may be +infinity.
quad::QuadratureResult mu_plus(int n, double a, double rho);
/// Same value through cosh(r) = cosh(a) x:
/// cosh(a) int_1^{cosh rho / cosh a} (x^{2n-2} - 1)^{-1/2} (cosh^2(a) x^2 - 1)^{-1/2} dx.
/// Finite rho only.
quad::QuadratureResult mu_plus_substituted(int n, double a, double rho);

/// mu_0(rho) = int_b^rho (cosh^{2n-2} r - 1)^{-1/2} dr, rho in (0, inf].
quad::QuadratureResult mu_zero(int n, double rho, double b = 1.0);

/// mu_-(d, rho) = d int_0^rho (cosh^{2n-2} r - d^2)^{-1/2} dr, 0 < d < 1.
/// Odd in rho; rho may be +-infinity.
quad::QuadratureResult mu_minus(int n, double d, double rho);

struct HeightResult {
  double value = 0.0;  // +inf for d = 1
  double error_estimate = 0.0;
  Regime regime = Regime::bigraph;
  bool infinite = false;
};

/// h_T(d) = 2 lim mu_+, d > 1.
HeightResult height_h_T(int n, double d);
HeightResult height_h_T_from_neck(int n, double a);
/// Vertical extent of M_d in any regime: h_T for d > 1, +inf for d = 1,
/// 2 lim mu_- for d < 1.
HeightResult translation_height(int n, double d);

/// mu_dot, mu_ddot in closed form; mu by quadrature (free constant b = 1
/// when d = 1). Bigraph: upper branch, rho >= a. Half graph: rho > 0.
TranslationProfilePoint translation_point(const TranslationSurface& s, double rho);
std::vector<TranslationProfilePoint> translation_profile(const TranslationSurface& s,
                                                         std::span<const double> rho_grid);

/// Profile without the mu quadrature (mu left at 0), for curvature work.
TranslationProfilePoint translation_slopes(const TranslationSurface& s, double rho);

struct CurvatureDecayRow {
  double rho = 0.0;
  double k_G = 0.0;
  double k_E = 0.0;
  double sum_abs = 0.0;  // |k_G| + |k_E|
  double nH = 0.0;
  double v = 0.0;
  double flux_drift = 0.0;  // |first integral - d|
};

struct CurvatureDecayReport {
  TranslationSurface surface;
  std::vector<CurvatureDecayRow> rows;
  bool decreasing = false;
  bool below_tol = false;  // last |k_G| + |k_E| < tol
  bool minimal = false;    // all |nH| < 1e-8
  bool v_positive = false;
  double max_nH = 0.0;
  double max_flux_drift = 0.0;
  bool passed = false;
};

/// rho_list must be increasing and inside the regime's domain.
CurvatureDecayReport curvature_decay_check(int n, double d, std::span<const double> rho_list,
                                           double tol = 1e-6);

/// n = 2: int |K| d mu over rho <= rho_max, per unit length of the
/// translation orbit (the analogue of excluding the sphere factor).
/// Bigraph counts both sheets over [a, rho_max]; half graph (0, rho_max];
/// entire graph [-rho_max, rho_max].
CurvatureIntegral total_curvature_partial(double d, double rho_max);

}  // namespace minhyp
