#include "minhyp/transinv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "minhyp/errors.hpp"
#include "minhyp/hyperbolic.hpp"

namespace minhyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dimension(int n) {
  if (n < 2) throw DomainError("dimension n must be >= 2, got " + std::to_string(n));
}

quad::TailPolicy tail_policy(bool singular) {
  quad::TailPolicy p;
  p.singular_start = singular;
  return p;
}

// (cosh^{2n-2}(r) - c^{2n-2})^{-1/2} c^{n-1} written through
// L = log(cosh r / c) >= 0: exp(-(n-1) L) / sqrt(1 - exp(-(2n-2) L)).
double slope_from_log_ratio(int n, double L) {
  return std::exp(-(n - 1) * L) / std::sqrt(-std::expm1(-(2.0 * n - 2.0) * L));
}

// log(cosh(rho)) - log(d)/(n-1), the L above for the given surface.
double log_ratio(const TranslationSurface& s, double rho) {
  if (s.regime == Regime::bigraph) return hyp::log_cosh_ratio(s.a, rho - s.a);
  return hyp::log_cosh(rho) - std::log(s.d) / (s.n - 1);
}

void require_rho(const TranslationSurface& s, double rho) {
  if (!std::isfinite(rho)) throw DomainError("rho must be finite");
  if (s.regime == Regime::bigraph && rho < s.a)
    throw DomainError("bigraph profile needs rho >= a = " + std::to_string(s.a));
  if (s.regime == Regime::graph_half && !(rho > 0.0))
    throw DomainError("half-graph profile (d = 1) needs rho > 0");
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::graph_entire: return "graph_entire";
    case Regime::graph_half: return "graph_half";
    case Regime::bigraph: return "bigraph";
  }
  return "unknown";
}

double neck_from_d(int n, double d) {
  require_dimension(n);
  if (!(d > 1.0)) throw RegimeError("neck distance a exists only for d > 1");
  const double x = std::expm1(std::log1p(d - 1.0) / (n - 1));  // d^{1/(n-1)} - 1
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

TranslationSurface make_translation_surface(int n, double d) {
  require_dimension(n);
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("d must be finite and > 0");
  TranslationSurface s;
  s.n = n;
  s.d = d;
  if (d > 1.0) {
    s.regime = Regime::bigraph;
    s.a = neck_from_d(n, d);
  } else if (d == 1.0) {
    s.regime = Regime::graph_half;
  } else {
    s.regime = Regime::graph_entire;
  }
  return s;
}

TranslationSurface translation_surface_from_neck(int n, double a) {
  require_dimension(n);
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("neck distance a must be finite and > 0");
  TranslationSurface s;
  s.n = n;
  s.a = a;
  s.d = std::exp((n - 1) * hyp::log_cosh(a));
  s.regime = Regime::bigraph;
  return s;
}

// ---------------------------------------------------------------------------

quad::QuadratureResult mu_plus(int n, double a, double rho) {
  require_dimension(n);
  if (!(a > 0.0)) throw DomainError("mu_plus needs a > 0");
  if (!(rho >= a)) throw DomainError("mu_plus needs rho >= a");
  if (rho == a) return {};
  quad::SingularIntegrandSpec spec{
      [n, a](double delta) { return slope_from_log_ratio(n, hyp::log_cosh_ratio(a, delta)); }, a,
      rho, static_cast<double>(n - 1)};
  if (std::isinf(rho)) return quad::integrate_exponential_tail(spec, tail_policy(true));
  return quad::integrate_sqrt_singularity(spec);
}

quad::QuadratureResult mu_plus_substituted(int n, double a, double rho) {
  require_dimension(n);
  if (!(a > 0.0)) throw DomainError("mu_plus_substituted needs a > 0");
  if (!(rho >= a) || std::isinf(rho)) throw DomainError("mu_plus_substituted needs finite rho >= a");
  if (rho == a) return {};
  const double ca = std::cosh(a);
  // Offset y = x - 1; the upper limit cosh(rho)/cosh(a) - 1 avoids cancellation.
  const double y_max = std::expm1(hyp::log_cosh_ratio(a, rho - a));
  quad::SingularIntegrandSpec spec{
      [n, ca](double y) {
        const double x = 1.0 + y;
        const double p = std::expm1((2.0 * n - 2.0) * std::log1p(y));  // x^{2n-2} - 1
        const double q = ca * ca * x * x - 1.0;
        return ca / std::sqrt(p * q);
      },
      1.0, 1.0 + y_max, 0.0};
  quad::QuadratureResult r = quad::integrate_sqrt_singularity(spec);
  return r;
}

quad::QuadratureResult mu_zero(int n, double rho, double b) {
  require_dimension(n);
  if (!(rho > 0.0)) throw DomainError("mu_zero needs rho > 0");
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("mu_zero needs a finite base point b > 0");
  auto g = [n](double r) { return slope_from_log_ratio(n, hyp::log_cosh(r)); };
  if (rho == b) return {};
  if (std::isinf(rho)) {
    quad::SingularIntegrandSpec spec{[g, b](double delta) { return g(b + delta); }, b, kInf,
                                     static_cast<double>(n - 1)};
    return quad::integrate_exponential_tail(spec, tail_policy(false));
  }
  if (rho > b) return quad::integrate_adaptive(g, b, rho);
  // Below b the integrand behaves like 1/(sqrt(n-1) r); r = e^y makes it smooth.
  auto gy = [g](double y) {
    const double r = std::exp(y);
    return g(r) * r;
  };
  quad::QuadratureResult r = quad::integrate_adaptive(gy, std::log(rho), std::log(b));
  r.value = -r.value;
  return r;
}

quad::QuadratureResult mu_minus(int n, double d, double rho) {
  require_dimension(n);
  if (!(d > 0.0 && d < 1.0)) throw RegimeError("mu_minus needs 0 < d < 1");
  if (std::isnan(rho)) throw DomainError("mu_minus: rho is NaN");
  if (rho == 0.0) return {};
  const double log_d = std::log(d) / (n - 1);
  auto g = [n, log_d](double r) { return slope_from_log_ratio(n, hyp::log_cosh(r) - log_d); };
  quad::QuadratureResult r;
  if (std::isinf(rho)) {
    quad::SingularIntegrandSpec spec{g, 0.0, kInf, static_cast<double>(n - 1)};
    r = quad::integrate_exponential_tail(spec, tail_policy(false));
  } else {
    r = quad::integrate_adaptive(g, 0.0, std::fabs(rho));
  }
  if (rho < 0.0) r.value = -r.value;
  return r;
}

// ---------------------------------------------------------------------------

HeightResult height_h_T_from_neck(int n, double a) {
  const quad::QuadratureResult r = mu_plus(n, a, kInf);
  return {2.0 * r.value, 2.0 * r.error_estimate, Regime::bigraph, false};
}

HeightResult height_h_T(int n, double d) {
  require_dimension(n);
  if (!(d > 1.0)) throw RegimeError("h_T(d) is defined for d > 1");
  return height_h_T_from_neck(n, neck_from_d(n, d));
}

HeightResult translation_height(int n, double d) {
  const TranslationSurface s = make_translation_surface(n, d);
  switch (s.regime) {
    case Regime::bigraph: return height_h_T_from_neck(n, s.a);
    case Regime::graph_half: return {kInf, 0.0, Regime::graph_half, true};
    case Regime::graph_entire: {
      const quad::QuadratureResult r = mu_minus(n, d, kInf);
      return {2.0 * r.value, 2.0 * r.error_estimate, Regime::graph_entire, false};
    }
  }
  throw InternalError("translation_height: unknown regime");
}

// ---------------------------------------------------------------------------

TranslationProfilePoint translation_slopes(const TranslationSurface& s, double rho) {
  require_rho(s, rho);
  const int n = s.n;
  const double L = log_ratio(s, rho);
  // q = d sech^{n-1}(rho) = exp(-(n-1) L); mu_dot = q (1 - q^2)^{-1/2} and
  // q' = -(n-1) tanh(rho) q give mu_ddot = -(n-1) tanh(rho) q (1 - q^2)^{-3/2}.
  const double q = std::exp(-(n - 1) * L);
  const double one_minus_q2 = -std::expm1(-(2.0 * n - 2.0) * L);
  TranslationProfilePoint p;
  p.rho = rho;
  if (one_minus_q2 <= 0.0) {
    p.mu_dot = kInf;
    p.mu_ddot = -kInf;
    return p;
  }
  const double root = std::sqrt(one_minus_q2);
  p.mu_dot = q / root;
  p.mu_ddot = -(n - 1) * std::tanh(rho) * q / (one_minus_q2 * root);
  return p;
}

TranslationProfilePoint translation_point(const TranslationSurface& s, double rho) {
  TranslationProfilePoint p = translation_slopes(s, rho);
  switch (s.regime) {
    case Regime::bigraph: p.mu = mu_plus(s.n, s.a, rho).value; break;
    case Regime::graph_half: p.mu = mu_zero(s.n, rho).value; break;
    case Regime::graph_entire: p.mu = mu_minus(s.n, s.d, rho).value; break;
  }
  return p;
}

std::vector<TranslationProfilePoint> translation_profile(const TranslationSurface& s,
                                                         std::span<const double> rho_grid) {
  std::vector<TranslationProfilePoint> out;
  out.reserve(rho_grid.size());
  for (double rho : rho_grid) out.push_back(translation_point(s, rho));
  return out;
}

CurvatureDecayReport curvature_decay_check(int n, double d, std::span<const double> rho_list,
                                           double tol) {
  CurvatureDecayReport rep;
  rep.surface = make_translation_surface(n, d);
  if (rho_list.empty()) throw DomainError("curvature_decay_check needs at least one rho");
  for (std::size_t i = 1; i < rho_list.size(); ++i)
    if (!(rho_list[i] > rho_list[i - 1])) throw DomainError("rho_list must be increasing");

  rep.decreasing = true;
  rep.v_positive = true;
  for (double rho : rho_list) {
    const TranslationProfilePoint p = translation_slopes(rep.surface, rho);
    CurvatureDecayRow row;
    row.rho = rho;
    if (std::isinf(p.mu_dot)) {
      // Vertical tangent at rho = a: k_G = -(n-1) tanh(a), k_E = tanh(a), v = 0.
      row.k_G = -(n - 1) * std::tanh(rho);
      row.k_E = std::tanh(rho);
      row.v = 0.0;
      row.flux_drift = 0.0;
    } else {
      const CurvatureRecord c = curvatures_translation(p, n);
      row.k_G = c.k_meridian;
      row.k_E = c.k_sphere;
      row.v = c.v;
      row.flux_drift = std::fabs(translation_flux(p, n) - d) / d;
    }
    row.sum_abs = std::fabs(row.k_G) + std::fabs(row.k_E);
    row.nH = row.k_G + (n - 1) * row.k_E;
    if (!rep.rows.empty() && std::fabs(rho) > std::fabs(rep.rows.back().rho) &&
        row.sum_abs > rep.rows.back().sum_abs)
      rep.decreasing = false;
    if (!(row.v > 0.0) && !(rep.surface.regime == Regime::bigraph && rho == rep.surface.a))
      rep.v_positive = false;
    rep.max_nH = std::max(rep.max_nH, std::fabs(row.nH));
    rep.max_flux_drift = std::max(rep.max_flux_drift, row.flux_drift);
    rep.rows.push_back(row);
  }
  rep.below_tol = rep.rows.back().sum_abs < tol;
  rep.minimal = rep.max_nH < 1e-8;
  rep.passed = rep.decreasing && rep.below_tol && rep.minimal && rep.v_positive &&
               rep.max_flux_drift < 1e-9;
  return rep;
}

CurvatureIntegral total_curvature_partial(double d, double rho_max) {
  const TranslationSurface s = make_translation_surface(2, d);
  if (!std::isfinite(rho_max)) throw DomainError("total_curvature_partial needs finite rho_max");

  // n = 2, q = d sech(rho): |A|^2 = 2 q^2 tanh^2, v^2 = 1 - q^2, and
  // d mu = cosh(rho) (1 - q^2)^{-1/2} d rho, so
  // |K| d mu / d rho = (q^2 tanh^2 + 1 - q^2) cosh / sqrt(1 - q^2).
  auto density = [](double rho, double L) {
    const double q2 = std::exp(-2.0 * L);
    const double one_minus_q2 = -std::expm1(-2.0 * L);
    const double th = std::tanh(rho);
    return (q2 * th * th + one_minus_q2) * std::cosh(rho) / std::sqrt(one_minus_q2);
  };

  quad::QuadratureResult r;
  double factor = 1.0;
  switch (s.regime) {
    case Regime::bigraph: {
      if (!(rho_max > s.a)) throw DomainError("total_curvature_partial needs rho_max > a");
      const double a = s.a;
      quad::SingularIntegrandSpec spec{
          [a, density](double delta) {
            return density(a + delta, hyp::log_cosh_ratio(a, delta));
          },
          a, rho_max, 0.0};
      r = quad::integrate_sqrt_singularity(spec);
      factor = 2.0;
      break;
    }
    case Regime::graph_half: {
      if (!(rho_max > 0.0)) throw DomainError("total_curvature_partial needs rho_max > 0");
      // Regular at 0: the integrand equals tanh(rho) cosh(rho) (1 + sech^2 rho).
      r = quad::integrate_adaptive(
          [](double rho) {
            const double th = std::tanh(rho);
            const double sh = hyp::sech(rho);
            return th * std::cosh(rho) * (1.0 + sh * sh);
          },
          0.0, rho_max);
      break;
    }
    case Regime::graph_entire: {
      if (!(rho_max > 0.0)) throw DomainError("total_curvature_partial needs rho_max > 0");
      const double log_d = std::log(d);
      r = quad::integrate_adaptive(
          [density, log_d](double rho) { return density(rho, hyp::log_cosh(rho) - log_d); }, 0.0,
          rho_max);
      factor = 2.0;
      break;
    }
  }
  return {factor * r.value, factor * r.error_estimate, 0.0, false};
}

}  // namespace minhyp
