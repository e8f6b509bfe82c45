#include "minhyp/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "minhyp/catenoid.hpp"
#include "minhyp/errors.hpp"
#include "minhyp/hgeom.hpp"
#include "minhyp/hyperbolic.hpp"
#include "minhyp/jacobi.hpp"
#include "minhyp/quad.hpp"
#include "minhyp/transinv.hpp"

namespace minhyp {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) { return report::format_number(x); }

CheckResult make(const char* module, const char* name, double value, double threshold, bool passed,
                 std::string detail = {}) {
  return {module, name, passed, value, threshold, std::move(detail)};
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return out;
}

// Observed order of a quantity that should vanish like h^2: errors at h and
// h/2 must shrink by at least 3, unless both are already at round-off.
bool second_order(double coarse, double fine, double floor = 1e-11) {
  return fine <= floor || (coarse > 0.0 && coarse / fine > 3.0);
}

// -- hgeom -------------------------------------------------------------------

CheckResult check_normA2_consistency() {
  double worst = 0.0;
  double worst_closed = 0.0;
  for (int n : {2, 3, 4})
    for (double a : {0.5, 1.0, 2.0}) {
      const Catenoid c(n, a);
      const auto t = linspace(-0.9 * c.half_height(), 0.9 * c.half_height(), 41);
      for (const auto& p : c.profile(t)) {
        const CurvatureRecord r = curvatures_rotation(p, n);
        const double direct = r.k_meridian * r.k_meridian + (n - 1) * r.k_sphere * r.k_sphere;
        worst = std::max(worst, std::fabs(direct - r.normA2) / std::max(1.0, r.normA2));
        const double closed = c.extrinsic_data(p.f).normA2;
        worst_closed = std::max(worst_closed, std::fabs(r.normA2 - closed) / std::max(1.0, closed));
      }
    }
  return make("hgeom", "normA2_equals_principal_sum", worst, 1e-12,
              worst <= 1e-12 && worst_closed <= 1e-8,
              "against the closed form in rho (relative): " + fmt(worst_closed));
}

// Intrinsic K of the warped metric by finite differences against the Gauss
// equation, at h and h/2.
CheckResult check_gauss_equation() {
  const Catenoid c(2, 1.0);
  const double t0 = 0.5 * c.half_height();
  auto error_at = [&](double h) {
    const double t[3] = {t0 - h, t0, t0 + h};
    const auto prof = c.profile(t);
    const StencilPoint s[3] = {stencil_point(prof[0], 2), stencil_point(prof[1], 2),
                               stencil_point(prof[2], 2)};
    const double K = *curvatures_rotation(prof[1], 2).K;
    return std::fabs(warped_gauss_curvature(s) - K);
  };
  const double e1 = error_at(1e-2);
  const double e2 = error_at(5e-3);
  return make("hgeom", "gauss_equation_second_order", e2, e1 / 3.0, second_order(e1, e2),
              "|K_fd - K_gauss| at h=1e-2: " + fmt(e1) + ", h=5e-3: " + fmt(e2));
}

// n f_t sinh^{n-1}(f) H against the derivative of sinh^{n-1}(f)(1+f_t^2)^{-1/2}
// on a curve that is not minimal.
CheckResult check_flux_identity() {
  const int n = 3;
  auto point = [](double t) {
    RotationProfilePoint p;
    p.t = t;
    p.f = 1.0 + 0.3 * t * t + 0.1 * t * t * t;
    p.f_t = 0.6 * t + 0.3 * t * t;
    p.f_tt = 0.6 + 0.6 * t;
    return p;
  };
  const double t0 = 0.4;
  const RotationProfilePoint p = point(t0);
  const double lhs =
      n * p.f_t * std::exp((n - 1) * hyp::log_sinh(p.f)) * curvatures_rotation(p, n).H;
  auto err = [&](double h) {
    const double d = (rotation_flux(point(t0 + h), n) - rotation_flux(point(t0 - h), n)) / (2 * h);
    return std::fabs(d - lhs);
  };
  const double e1 = err(1e-2);
  const double e2 = err(5e-3);
  return make("hgeom", "flux_derivative_identity", e2, e1 / 3.0, second_order(e1, e2),
              "errors " + fmt(e1) + " -> " + fmt(e2));
}

CheckResult check_simons() {
  double worst = INFINITY;
  for (double a : {0.5, 1.0, 2.0}) {
    const Catenoid c(2, a);
    const double T = c.half_height();
    const double h = 1e-3;
    for (double t0 : linspace(-0.98 * T, 0.98 * T, 99)) {
      const double t[3] = {t0 - h, t0, t0 + h};
      const auto prof = c.profile(t);
      const StencilPoint s[3] = {stencil_point(prof[0], 2), stencil_point(prof[1], 2),
                                 stencil_point(prof[2], 2)};
      worst = std::min(worst, simons_residual(s));
    }
  }
  return make("hgeom", "simons_inequality", worst, -1e-6, worst >= -1e-6,
              "minimum residual over n=2 catenoids");
}

// -- quad --------------------------------------------------------------------

CheckResult check_substitution_invariance() {
  double worst = 0.0;
  for (int n : {2, 3, 4})
    for (double a : {0.5, 1.0, 2.0}) {
      const Catenoid c(n, a);
      for (double d : {0.1, 1.0, 3.0}) {
        const double u = c.lambda_result(a + d).value;
        const double v = c.lambda_v_form(a + d).value;
        worst = std::max(worst, std::fabs(u - v));
      }
    }
  return make("quad", "lambda_u_form_vs_v_form", worst, 1e-9, worst < 1e-9, "3x3x3 grid");
}

// Below about 1e-12 the estimate sits on the round-off floor, where
// refinement no longer has to reduce it.
CheckResult check_monotone_refinement() {
  quad::SingularIntegrandSpec spec{[](double d) { return std::cos(8.0 * d) / std::sqrt(d); }, 0.0,
                                   4.0, 0.0};
  double previous = INFINITY;
  bool monotone = true;
  std::string detail = "u^{-1/2} cos(8u) on [0,4], levels 0..6:";
  for (int level = 0; level <= 6; ++level) {
    const auto r = quad::integrate_sqrt_singularity_uniform(spec, level);
    if (previous > 1e-12 && !(r.error_estimate < previous)) monotone = false;
    previous = r.error_estimate;
    detail += " " + fmt(r.error_estimate);
  }
  return make("quad", "error_estimate_decreases_with_level", previous, 1e-12, monotone, detail);
}

// -- catenoid ----------------------------------------------------------------

CheckResult check_first_integral(double perturb) {
  double worst = 0.0;
  for (int n : {2, 3})
    for (double a : {0.5, 1.0, 2.0}) worst = std::max(worst, first_integral_drift(n, a, perturb));
  return make("catenoid", "first_integral", worst, 1e-9, worst <= 1e-9,
              perturb != 0.0 ? "f perturbed by " + fmt(perturb) : "");
}

CheckResult check_canary() {
  const double drift = first_integral_drift(2, 1.0, 1e-3);
  return make("catenoid", "canary_perturbed_profile_detected", drift, 1e-9, drift > 1e-9,
              "first-integral drift with f + 1e-3 must exceed the tolerance");
}

CheckResult check_minimality() {
  double worst = 0.0;
  for (int n : {2, 3, 4})
    for (double a : {0.5, 1.0, 2.0}) {
      const Catenoid c(n, a);
      const auto t = linspace(-0.99 * c.half_height(), 0.99 * c.half_height(), 101);
      for (const auto& p : c.profile(t)) worst = std::max(worst, std::fabs(curvatures_rotation(p, n).H));
    }
  double worst_t = 0.0;
  for (int n : {2, 3})
    for (double d : {0.5, 1.0, 2.0}) {
      const TranslationSurface s = make_translation_surface(n, d);
      const double lo = s.regime == Regime::bigraph ? s.a + 1e-3 : (s.regime == Regime::graph_half ? 1e-3 : -10.0);
      for (double rho : linspace(lo, 20.0, 101))
        worst_t = std::max(worst_t, std::fabs(curvatures_translation(translation_slopes(s, rho), n).H));
    }
  const double w = std::max(worst, worst_t);
  return make("catenoid", "minimality_residual", w, 1e-8, w <= 1e-8,
              "catenoids " + fmt(worst) + ", translation surfaces " + fmt(worst_t));
}

CheckResult check_dual_representation() {
  double worst = 0.0;
  for (int n : {2, 3})
    for (double a : {0.5, 1.0, 2.0}) {
      const Catenoid c(n, a);
      const auto t = linspace(0.0, 0.95 * c.half_height(), 60);
      const auto ode = c.profile_ode(t);
      for (std::size_t i = 0; i < t.size(); ++i)
        worst = std::max(worst, std::fabs(ode[i].f - c.profile_inverse(t[i])));
    }
  return make("catenoid", "ode_vs_quadrature_inverse", worst, 1e-7, worst <= 1e-7,
              "|f_ode - f_lambda| on [0, 0.95 T(a)]");
}

// Near the limit the true gap to pi/(n-1) drops below the quadrature error,
// so a sample only counts against the bound if it exceeds it by more than
// its error estimate.
CheckResult check_height_bound_and_monotone() {
  bool ok = true;
  double worst_gap = INFINITY;
  for (int n : {2, 3, 4}) {
    double previous = 0.0;
    for (double a : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
      const Catenoid c(n, a);
      const double h = c.height();
      const double err = 2.0 * c.half_height_result().error_estimate;
      worst_gap = std::min(worst_gap, kPi / (n - 1) - h + err);
      if (!(h > previous)) ok = false;
      previous = h;
    }
  }
  return make("catenoid", "height_bound_and_monotone", worst_gap, 0.0, ok && worst_gap > 0.0,
              "min of pi/(n-1) - h_R(a) + err; monotone in a");
}

// -- jacobi ------------------------------------------------------------------

CheckResult check_parity() {
  double worst = 0.0;
  for (int n : {2, 3}) {
    const Catenoid c(n, 1.0);
    std::vector<double> t;
    for (double x : linspace(0.05, 0.95, 19)) {
      t.push_back(x * c.half_height());
      t.push_back(-x * c.half_height());
    }
    const auto s = sample_fields(c, t);
    for (std::size_t i = 0; i < s.size(); i += 2) {
      worst = std::max(worst, std::fabs(s[i].v + s[i + 1].v));
      worst = std::max(worst, std::fabs(s[i].e - s[i + 1].e));
      worst = std::max(worst, std::fabs(s[i].h_gamma - s[i + 1].h_gamma));
    }
  }
  return make("jacobi", "parity_v_odd_e_even_h_even", worst, 1e-14, worst <= 1e-14);
}

CheckResult check_e_identity() {
  double worst = 0.0;
  for (int n : {2, 3})
    for (double a : {0.5, 1.0, 2.0}) {
      const Catenoid c(n, a);
      const auto t = linspace(0.0, 0.95 * c.half_height(), 40);
      const auto s = sample_fields(c, t);
      const auto prof = c.profile_ode(t);
      for (std::size_t i = 0; i < t.size(); ++i) {
        // A, B, v1 from the closed forms at the ODE radius; v from f_t.
        const double rho = std::max(prof[i].f, a);
        const double v_ode = prof[i].f_t / std::hypot(1.0, prof[i].f_t);
        const double e = -A1_at_rho(c, rho) + B1_at_rho(c, rho).value * v_ode;
        worst = std::max(worst, std::fabs(e - s[i].e));
      }
    }
  return make("jacobi", "e_equals_minus_A_plus_B_v", worst, 1e-9, worst <= 1e-9,
              "independent B quadrature and ODE v");
}

CheckResult check_unique_zeros() {
  std::ostringstream detail;
  bool ok = true;
  for (int n : {2, 3})
    for (double a : {0.5, 1.0, 2.0}) {
      const Catenoid c(n, a);
      const double sigma = threshold_sigma(c);
      const double tau = threshold_tau(c, sigma);
      const int ze = count_sign_changes_e(c, 10000);
      const int zW = count_sign_changes_W(c, sigma, 10000);
      const int zw1 = count_sign_changes_w(c, 0.5 * (tau + c.half_height()), 10000);
      const int zw2 = count_sign_changes_w(c, 0.5 * tau, 10000);
      if (ze != 1 || zW != 1 || zw1 > 1 || zw2 > 1) ok = false;
      detail << "(" << n << "," << a << "):" << ze << zW << zw1 << zw2 << " ";
    }
  return make("jacobi", "unique_zeros_e_W_w", ok ? 1.0 : 0.0, 1.0, ok,
              "sign changes e,W,w(high alpha),w(low alpha): " + detail.str());
}

CheckResult check_spectral_convergence(const std::vector<double>& mesh) {
  const Catenoid c(2, 1.0);
  const double sigma = threshold_sigma(c);
  std::vector<double> lam;
  for (double h : mesh) lam.push_back(std::fabs(eigen_bottom(assemble_mode_operator(c, -sigma, sigma, 0, h), 1).eigenvalues[0]));
  bool ok = true;
  for (std::size_t i = 1; i < lam.size(); ++i) ok = ok && second_order(lam[i - 1], lam[i], 1e-12);
  std::string detail;
  for (double l : lam) detail += fmt(l) + " ";
  return make("jacobi", "lambda1_at_sigma_converges_to_zero", lam.back(), 0.0, ok,
              "|lambda_1| per mesh: " + detail);
}

CheckResult check_eigenvalue_monotone_in_domain(double h) {
  const Catenoid c(2, 1.0);
  const double T = c.half_height();
  double previous = INFINITY;
  bool ok = true;
  std::string detail;
  for (double x : {0.3, 0.5, 0.7, 0.9, 0.97}) {
    const double l = eigen_bottom(assemble_mode_operator(c, -x * T, x * T, 0, h), 1).richardson[0];
    if (l > previous) ok = false;
    previous = l;
    detail += fmt(l) + " ";
  }
  return make("jacobi", "lambda1_decreases_with_domain", previous, 0.0, ok, detail);
}

CheckResult check_positive_supersolution(double h) {
  double worst = INFINITY;
  for (int n : {2, 3}) {
    const Catenoid c(n, 1.0);
    const double T = c.half_height();
    const auto r = eigen_bottom(assemble_mode_operator(c, 0.02 * T, 0.98 * T, 0, h), 1);
    worst = std::min(worst, r.eigenvalues[0]);
  }
  return make("jacobi", "stable_where_v_positive", worst, 0.0, worst > 0.0,
              "lambda_1 on (0.02 T, 0.98 T), k=0");
}

// -- transinv ----------------------------------------------------------------

CheckResult check_translation_first_integral() {
  double worst = 0.0;
  for (int n : {2, 3, 4})
    for (double d : {0.5, 1.0, 2.0}) {
      const TranslationSurface s = make_translation_surface(n, d);
      const double lo = s.regime == Regime::bigraph ? s.a + 1e-6 : (s.regime == Regime::graph_half ? 1e-3 : -15.0);
      for (double rho : linspace(lo, 15.0, 61)) {
        const TranslationProfilePoint p = translation_slopes(s, rho);
        worst = std::max(worst, std::fabs(translation_flux(p, n) - d) / d);
      }
    }
  return make("transinv", "first_integral", worst, 1e-9, worst <= 1e-9);
}

// Sampled where the gaps to pi/(n-1) exceed the quadrature error.
CheckResult check_height_ordering() {
  bool ok = true;
  double worst = INFINITY;
  for (int n : {2, 3, 4}) {
    const double ref = kPi / (n - 1);
    double hT_min = INFINITY, hR_max = 0.0;
    for (double d : {1.0001, 1.01, 1.5, 3.0, 100.0}) hT_min = std::min(hT_min, height_h_T(n, d).value);
    for (double a : {0.1, 1.0, 3.0}) hR_max = std::max(hR_max, height(n, a));
    if (!(hT_min > ref && ref > hR_max)) ok = false;
    worst = std::min({worst, hT_min - ref, ref - hR_max});
  }
  return make("transinv", "h_T_above_pi_over_n_minus_1_above_h_R", worst, 0.0, ok && worst > 0.0);
}

// Heights on both sides of d = 1 against log(1/|d - 1|): both slopes should
// match 1/sqrt(n-1).
CheckResult check_regime_boundary() {
  bool ok = true;
  std::string detail;
  double worst = 0.0;
  for (int n : {2, 3}) {
    const double e1 = 1e-6, e2 = 1e-8;
    const double span = std::log(e1 / e2);
    const double up = (height_h_T(n, 1.0 + e2).value - height_h_T(n, 1.0 + e1).value) / span;
    const double down = (translation_height(n, 1.0 - e2).value - translation_height(n, 1.0 - e1).value) / span;
    const double expected = 1.0 / std::sqrt(n - 1.0);
    const double dev = std::max(std::fabs(up - expected), std::fabs(down - expected)) / expected;
    worst = std::max(worst, dev);
    if (dev > 0.05) ok = false;
    detail += "n=" + std::to_string(n) + " slopes " + fmt(up) + ", " + fmt(down) + "; ";
  }
  return make("transinv", "log_divergence_both_sides_of_d_1", worst, 0.05, ok, detail);
}

}  // namespace

double first_integral_drift(int n, double a, double perturb, int samples) {
  const Catenoid c(n, a);
  const auto t = linspace(0.0, c.switch_height(), samples);
  const double ref = std::exp((n - 1) * hyp::log_sinh(a));
  double worst = 0.0;
  for (const auto& p : c.profile_ode(t)) {
    const double q = std::exp((n - 1) * hyp::log_sinh(p.f + perturb)) / std::hypot(1.0, p.f_t);
    worst = std::max(worst, std::fabs(q - ref) / ref);
  }
  return worst;
}

std::vector<CheckResult> run_invariant_suite(const SuiteOptions& options) {
  if (options.mesh.empty()) throw DomainError("check suite needs at least one mesh size");
  std::vector<std::function<CheckResult()>> checks = {
      check_normA2_consistency,
      check_gauss_equation,
      check_flux_identity,
      check_simons,
      check_substitution_invariance,
      check_monotone_refinement,
      [&] { return check_first_integral(options.perturb_f); },
      check_canary,
      check_minimality,
      check_dual_representation,
      check_height_bound_and_monotone,
      check_parity,
      check_e_identity,
      check_unique_zeros,
      [&] { return check_spectral_convergence(options.mesh); },
      [&] { return check_eigenvalue_monotone_in_domain(options.mesh.front()); },
      [&] { return check_positive_supersolution(options.mesh.front()); },
      check_translation_first_integral,
      check_height_ordering,
      check_regime_boundary,
  };
  std::vector<CheckResult> out;
  for (auto& check : checks) out.push_back(check());
  return out;
}

report::Json suite_json(const std::vector<CheckResult>& results) {
  report::Json doc = report::document("check");
  report::Json arr = report::Json::array();
  bool all = true;
  for (const auto& r : results) {
    report::Json j = report::Json::object();
    j["module"] = r.module;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["value"] = report::number(r.value);
    j["threshold"] = report::number(r.threshold);
    j["detail"] = r.detail;
    arr.push_back(std::move(j));
    all = all && r.passed;
  }
  doc["passed"] = all;
  doc["checks"] = std::move(arr);
  return doc;
}

}  // namespace minhyp
