// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "minhyp/catenoid.hpp"
#include "minhyp/checks.hpp"
#include "minhyp/hgeom.hpp"
#include "minhyp/jacobi.hpp"
#include "minhyp/quad.hpp"
#include "minhyp/transinv.hpp"

using namespace minhyp;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
  return out;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Errors at successive halvings of h must each drop by more than 3, unless
// the finer one is already at round-off.
bool second_order(const std::vector<double>& errors, double floor = 1e-11) {
  for (std::size_t i = 1; i < errors.size(); ++i)
    if (!(errors[i] <= floor || errors[i - 1] / errors[i] > 3.0)) return false;
  return true;
}

std::array<StencilPoint, 3> stencil(const Catenoid& c, double t0, double h) {
  const double t[3] = {t0 - h, t0, t0 + h};
  const auto p = c.profile(t);
  return {stencil_point(p[0], c.n()), stencil_point(p[1], c.n()), stencil_point(p[2], c.n())};
}

Outcome height_limits() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream d;
  const std::vector<double> grid{0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  for (int n : {2, 3, 4}) {
    const double ref = kPi / (n - 1);
    const double far = height(n, 20.0);
    const double small = height(n, 1e-3);
    double previous = 0.0;
    bool monotone = true;
    for (double a : grid) {
      const double h = height(n, a);
      monotone = monotone && h > previous;
      previous = h;
    }
    // The small-neck bound is stated for n = 2 only.
    ok = ok && std::fabs(far - ref) < 1e-3 && (n != 2 || small < 1e-2) && monotone;
    d << "n=" << n << " |h_R(20)-pi/(n-1)|=" << num(std::fabs(far - ref)) << " h_R(1e-3)=" << num(small)
      << (monotone ? " monotone; " : " NOT monotone; ");
    if (n == 2 && !(small < 1e-2))
      d << "(h_R(a) ~ 2a log(2/a) as a -> 0, so the 1e-2 bound at a = 1e-3 cannot hold for n = 2) ";
  }
  const double secs = seconds_since(start);
  d << "runtime " << num(secs) << " s";
  return {ok && secs < 10.0, d.str()};
}

// int_1^inf v^{-1} (v^N - 1)^{-1/2} dv with v = e^u becomes
// int_0^inf (e^{N u} - 1)^{-1/2} du: inverse square root at 0, decay N/2.
Outcome closed_form_quadrature() {
  bool ok = true;
  std::ostringstream d;
  for (int N : {2, 4, 6}) {
    quad::SingularIntegrandSpec spec;
    spec.integrand = [N](double u) { return 1.0 / std::sqrt(std::expm1(N * u)); };
    spec.singular_endpoint = 0.0;
    spec.far_endpoint = INFINITY;
    spec.decay_rate = 0.5 * N;
    const auto r = quad::integrate_exponential_tail(spec, {}, {1e-13, 1e-14, 4000});
    const double err = std::fabs(r.value - kPi / N);
    ok = ok && err < 1e-9;
    d << "N=" << N << " err " << num(err) << "; ";
  }
  return {ok, d.str()};
}

Outcome minimality_residual() {
  double worst_c = 0.0, worst_t = 0.0;
  for (int n : {2, 3, 4})
    for (double a : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const Catenoid c(n, a);
      const double T = c.half_height();
      for (const auto& p : c.profile(linspace(-0.999 * T, 0.999 * T, 201)))
        worst_c = std::max(worst_c, std::fabs(curvatures_rotation(p, n).H));
    }
  for (int n : {2, 3, 4})
    for (double d : {0.3, 0.9, 1.0, 1.1, 2.0, 10.0}) {
      const TranslationSurface s = make_translation_surface(n, d);
      const double lo = s.regime == Regime::bigraph ? s.a + 1e-4
                        : s.regime == Regime::graph_half ? 1e-3
                                                          : -20.0;
      for (double rho : linspace(lo, 20.0, 201))
        worst_t = std::max(worst_t, std::fabs(curvatures_translation(translation_slopes(s, rho), n).H));
    }
  const double w = std::max(worst_c, worst_t);
  return {w <= 1e-8, "max |H| catenoids " + num(worst_c) + ", translation surfaces " + num(worst_t)};
}

Outcome dual_representation() {
  double worst = 0.0, drift = 0.0;
  for (int n : {2, 3})
    for (double a : {0.5, 1.0, 2.0}) {
      const Catenoid c(n, a);
      const auto t = linspace(0.0, 0.95 * c.half_height(), 200);
      const auto ode = c.profile_ode(t);
      for (std::size_t i = 0; i < t.size(); ++i)
        worst = std::max(worst, std::fabs(ode[i].f - c.profile_inverse(t[i])));
      drift = std::max(drift, first_integral_drift(n, a));
    }
  return {worst <= 1e-7 && drift <= 1e-9,
          "max |f_ode - f_quad| " + num(worst) + ", first-integral drift " + num(drift)};
}

Outcome jacobi_residuals() {
  const std::vector<double> hs{1e-2, 5e-3, 2.5e-3};
  bool ok = true;
  std::ostringstream d;
  for (int n : {2, 3}) {
    const Catenoid c(n, 1.0);
    const double T = c.half_height();
    const double tau = threshold_tau(c);
    const double alpha = 0.5 * (tau + T);
    using Field = std::function<double(double)>;
    const std::vector<std::pair<std::string, std::pair<int, Field>>> fields{
        {"v", {0, [&](double t) { return field_v(c, t); }}},
        {"e", {0, [&](double t) { return field_e(c, t); }}},
        {"w", {0, [&](double t) { return field_w(c, alpha, t); }}},
        {"h_gamma", {1, [&](double t) { return field_h_gamma(c, t); }}},
    };
    for (const auto& [name, spec] : fields) {
      std::vector<double> res;
      for (double h : hs) {
        const ModeOperator op = assemble_mode_operator(c, -0.8 * T, 0.8 * T, spec.first, h);
        std::vector<double> u;
        for (double t : op.nodes) u.push_back(spec.second(t));
        res.push_back(jacobi_residual(op, u));
      }
      const bool rate = second_order(res);
      ok = ok && rate;
      d << "n=" << n << " " << name << ":" << num(res[0]) << ">" << num(res[1]) << ">" << num(res[2])
        << (rate ? "" : " (rate FAIL)") << "; ";
    }
  }
  return {ok, d.str()};
}

Outcome stability_structure() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream d;
  for (int n : {2, 3}) {
    const Catenoid c(n, 1.0);
    const double T = c.half_height();
    const double sigma = threshold_sigma(c);
    const SpectralResult at_sigma = eigen_bottom(assemble_mode_operator(c, -sigma, sigma, 0, 1e-2), 1);
    const bool zero = at_sigma.lambda1_is_zero;
    const std::vector<double> S{0.5 * sigma, 0.9 * sigma, sigma + 0.1 * (T - sigma), 0.95 * T};
    const std::vector<double> h{1e-2};
    const IndexCertificate cert = certify_index(c, S, h, 5);
    ok = ok && zero && cert.passed;
    d << "n=" << n << " lambda_1(sigma)=" << num(at_sigma.richardson[0]) << " +- "
      << num(at_sigma.richardson_error[0]) << (zero ? " zero" : " NOT zero") << ", index " << cert.index;
    for (const auto& f : cert.failures) d << " [" << f << "]";
    d << "; ";
  }
  const double secs = seconds_since(start);
  d << "runtime " << num(secs) << " s";
  return {ok && secs < 60.0, d.str()};
}

Outcome envelope_cross_check() {
  bool ok = true;
  double worst = 0.0;
  for (int n : {2, 3})
    for (double a : {0.5, 1.0, 2.0}) {
      const Catenoid c(n, a);
      const double sigma = threshold_sigma(c);
      const double sigma_env = envelope_sigma(c);
      const double tau = threshold_tau(c, sigma);
      worst = std::max(worst, std::fabs(sigma - sigma_env));
      ok = ok && 0.0 < tau && tau < sigma && sigma < c.half_height();
    }
  return {ok && worst <= 1e-6, "max |sigma_e - sigma_envelope| " + num(worst) + (ok ? ", ordered" : ", ordering FAIL")};
}

Outcome catenary_intersections() {
  bool ok = true;
  std::ostringstream d;
  const std::vector<std::pair<double, double>> pairs{{0.5, 1.0}, {1.0, 2.0}, {0.2, 1.5}, {0.5, 3.0}, {1.5, 1.6}};
  for (int n : {2, 3})
    for (const auto& [a, b] : pairs) {
      const IntersectionResult r = intersect_catenaries(n, a, b);
      ok = ok && r.count == 1 && r.t_star > 0.0;
      d << "(" << n << "," << a << "," << b << "):" << r.count << " ";
    }
  return {ok, d.str()};
}

Outcome curvature_integrals() {
  bool ok = true;
  std::ostringstream d;
  for (auto [n, a] : std::vector<std::pair<int, double>>{{2, 1.0}, {3, 0.5}}) {
    const CurvatureIntegral r = total_extrinsic_curvature(n, a);
    ok = ok && std::isfinite(r.value) && r.tail_bound < 1e-8;
    d << "int|A|^n(" << n << "," << a << ")=" << num(r.value) << " tail " << num(r.tail_bound) << "; ";
  }
  const std::vector<double> radii{10.0, 15.0, 20.0, 25.0, 30.0};
  auto rate_of = [&](const std::function<double(double)>& partial) {
    std::vector<double> v;
    for (double r : radii) v.push_back(partial(r));
    return fit_exponential_rate(radii, v);
  };
  for (double a : {0.5, 1.0, 2.0}) {
    const double rate = rate_of([a](double r) { return intrinsic_curvature_partial(a, r).value; });
    ok = ok && std::fabs(rate - 1.0) <= 0.1;
    d << "catenoid a=" << a << " rate " << num(rate) << "; ";
  }
  for (double dd : {0.5, 1.0, 2.0}) {
    const double rate = rate_of([dd](double r) { return total_curvature_partial(dd, r).value; });
    ok = ok && std::fabs(rate - 1.0) <= 0.1;
    d << "M_d d=" << dd << " rate " << num(rate) << "; ";
  }
  return {ok, d.str()};
}

// Near a = 20 the gap to pi/(n-1) is below the quadrature error, so the
// strict bound and monotonicity are judged up to the reported error.
Outcome translation_heights() {
  bool ok = true;
  std::ostringstream d;
  const std::vector<double> necks{0.01, 0.05, 0.1, 0.3, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0};
  for (int n : {2, 3, 4}) {
    const double ref = kPi / (n - 1);
    double previous = INFINITY, previous_err = 0.0;
    bool decreasing = true, above = true;
    for (double a : necks) {
      const HeightResult h = height_h_T_from_neck(n, a);
      decreasing = decreasing && h.value < previous + previous_err + h.error_estimate;
      above = above && h.value + h.error_estimate > ref;
      previous = h.value;
      previous_err = h.error_estimate;
    }
    // Strict decrease where the steps are resolvable.
    const std::vector<double> ds{1.0 + 1e-6, 1.001, 1.1, 2.0, 10.0, 1e3};
    double prev_d = INFINITY;
    for (double x : ds) {
      const double h = height_h_T(n, x).value;
      decreasing = decreasing && h < prev_d;
      above = above && h > ref;
      prev_d = h;
    }
    const double far = std::fabs(height_h_T_from_neck(n, 20.0).value - ref);
    const double near1 = height_h_T(n, 1.0 + 1e-8).value;
    ok = ok && decreasing && above && far < 1e-3 && near1 > 10.0;
    d << "n=" << n << (decreasing ? " decreasing" : " NOT decreasing") << (above ? " above" : " NOT above")
      << " |h_T(a=20)-pi/(n-1)|=" << num(far) << " h_T(1+1e-8)=" << num(near1) << "; ";
  }
  return {ok, d.str()};
}

Outcome two_dimensional_identities() {
  bool gauss_ok = true, simons_ok = true, decay_ok = true;
  double simons_min = INFINITY, last_A = 0.0;
  std::ostringstream d;
  for (double a : {0.5, 1.0, 2.0}) {
    const Catenoid c(2, a);
    const double T = c.half_height();
    for (double x : {-0.6, 0.1, 0.5, 0.9}) {
      const double t0 = x * T;
      std::vector<double> errs;
      for (double h : {1e-2, 5e-3, 2.5e-3}) {
        const auto s = stencil(c, t0, h);
        const double t[1] = {t0};
        const double K = *curvatures_rotation(c.profile(t)[0], 2).K;
        errs.push_back(std::fabs(warped_gauss_curvature(s) - K));
      }
      gauss_ok = gauss_ok && second_order(errs);
    }
    for (double t0 : linspace(-0.995 * T, 0.995 * T, 401))
      simons_min = std::min(simons_min, simons_residual(stencil(c, t0, 1e-3)));
    double previous = INFINITY;
    for (double rho : linspace(a + 1e-3, 30.0, 300)) {
      const double A = std::sqrt(c.extrinsic_data(rho).normA2);
      decay_ok = decay_ok && A < previous;
      previous = A;
    }
    last_A = std::max(last_A, previous);
  }
  simons_ok = simons_min >= -1e-6;
  decay_ok = decay_ok && last_A < 1e-6;
  d << "Gauss FD " << (gauss_ok ? "O(h^2)" : "rate FAIL") << ", Simons min " << num(simons_min)
    << ", |A|(30) " << num(last_A) << (decay_ok ? " decreasing" : " NOT decreasing");
  return {gauss_ok && simons_ok && decay_ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"height_limits", height_limits},
      {"closed_form_quadrature", closed_form_quadrature},
      {"minimality_residual", minimality_residual},
      {"dual_representation", dual_representation},
      {"jacobi_residuals", jacobi_residuals},
      {"stability_structure", stability_structure},
      {"envelope_cross_check", envelope_cross_check},
      {"catenary_intersections", catenary_intersections},
      {"curvature_integrals", curvature_integrals},
      {"translation_heights", translation_heights},
      {"two_dimensional_identities", two_dimensional_identities},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("%s %2d %s: %s\n", o.passed ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
