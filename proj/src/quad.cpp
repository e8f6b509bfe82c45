#include "minhyp/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "minhyp/errors.hpp"

namespace minhyp::quad {

namespace {

// Kronrod nodes (descending), with the 7-point Gauss weights on odd indices.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// One Gauss-Kronrod panel with the QUADPACK error heuristic.
Panel gk15(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<double, 15> fv{};
  const double fc = f(center);
  double kronrod = kKronrod[7] * fc;
  double gauss = kGauss[3] * fc;
  double abs_k = std::fabs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    kronrod += kKronrod[j] * (f1 + f2);
    abs_k += kKronrod[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) gauss += kGauss[j / 2] * (f1 + f2);
  }
  fv[14] = fc;
  const double mean = 0.5 * kronrod;
  double asc = kKronrod[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j)
    asc += kKronrod[j] * (std::fabs(fv[2 * j] - mean) + std::fabs(fv[2 * j + 1] - mean));

  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.value = kronrod * half;
  p.abs_value = abs_k * std::fabs(half);
  asc *= std::fabs(half);
  double err = std::fabs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (p.abs_value > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(err, 50.0 * eps * p.abs_value);
  p.error = err;
  if (!std::isfinite(p.value) || !std::isfinite(p.error))
    throw DomainError("integrand is not finite on the integration interval");
  return p;
}

Integrand substituted(const SingularIntegrandSpec& spec) {
  const Integrand& g = spec.integrand;
  return [&g](double s) { return 2.0 * s * g(s * s); };
}

}  // namespace

QuadratureResult integrate_adaptive(const Integrand& f, double lo, double hi,
                                    const Tolerance& tol) {
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("integrate_adaptive needs finite endpoints");
  QuadratureResult out;
  if (lo == hi) return out;

  std::priority_queue<Panel> heap;
  const Panel first = gk15(f, lo, hi);
  out.evaluations = 15;
  heap.push(first);
  double value = first.value;
  double error = first.error;
  double abs_total = first.abs_value;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  while (true) {
    const double target = std::max({tol.abs, tol.rel * std::fabs(value), 50.0 * eps * abs_total});
    if (error <= target) break;
    if (heap.size() >= tol.max_panels)
      throw AccuracyError("adaptive quadrature did not converge within " +
                              std::to_string(tol.max_panels) + " panels",
                          value, error);
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= std::min(worst.lo, worst.hi) || mid >= std::max(worst.lo, worst.hi)) {
      // Panel cannot be split further in floating point.
      throw AccuracyError("adaptive quadrature hit the floating-point resolution limit",
                          value, error);
    }
    heap.pop();
    const Panel left = gk15(f, worst.lo, mid);
    const Panel right = gk15(f, mid, worst.hi);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_total += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error_estimate = error;
  return out;
}

QuadratureResult integrate_sqrt_singularity(const SingularIntegrandSpec& spec,
                                            const Tolerance& tol) {
  if (!std::isfinite(spec.far_endpoint))
    throw DomainError("integrate_sqrt_singularity needs a finite far endpoint; use "
                      "integrate_exponential_tail for [a, inf)");
  if (!(spec.singular_endpoint <= spec.far_endpoint))
    throw DomainError("singular endpoint must not exceed the far endpoint");
  const double s_max = std::sqrt(spec.far_endpoint - spec.singular_endpoint);
  return integrate_adaptive(substituted(spec), 0.0, s_max, tol);
}

QuadratureResult integrate_sqrt_singularity_uniform(const SingularIntegrandSpec& spec,
                                                    int level) {
  if (level < 0 || level > 24) throw std::invalid_argument("refinement level out of range");
  if (!std::isfinite(spec.far_endpoint) || !(spec.singular_endpoint <= spec.far_endpoint))
    throw DomainError("uniform refinement needs a finite interval");
  const double s_max = std::sqrt(spec.far_endpoint - spec.singular_endpoint);
  const Integrand f = substituted(spec);
  const std::size_t panels = std::size_t{1} << level;
  QuadratureResult out;
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = s_max * static_cast<double>(i) / static_cast<double>(panels);
    const double hi = s_max * static_cast<double>(i + 1) / static_cast<double>(panels);
    const Panel p = gk15(f, lo, hi);
    out.value += p.value;
    out.error_estimate += p.error;
    out.evaluations += 15;
  }
  return out;
}

QuadratureResult integrate_exponential_tail(const SingularIntegrandSpec& spec,
                                            const TailPolicy& policy,
                                            const Tolerance& tol) {
  if (!(spec.decay_rate > 0.0))
    throw DomainError("an infinite endpoint needs a positive decay rate");
  if (policy.probes < 2 || !(policy.probe_span > 0.0) || !(policy.start_offset > 0.0))
    throw std::invalid_argument("invalid tail policy");
  const double r = spec.decay_rate;
  const Integrand& g = spec.integrand;

  // Envelope constant of |g(delta)| <= M exp(-r delta) on the probe window.
  std::vector<double> envelope(static_cast<std::size_t>(policy.probes));
  for (int j = 0; j < policy.probes; ++j) {
    const double delta =
        policy.start_offset + policy.probe_span * j / static_cast<double>(policy.probes - 1);
    envelope[static_cast<std::size_t>(j)] = std::fabs(g(delta)) * std::exp(r * delta);
  }
  const double first = envelope.front();
  const double last = envelope.back();
  if (!std::isfinite(first) || !std::isfinite(last) ||
      last > policy.max_growth * first + std::numeric_limits<double>::min())
    throw DomainError("integrand does not decay at the stated exponential rate");
  const double M = policy.safety * *std::max_element(envelope.begin(), envelope.end());

  Tolerance body_tol = tol;
  body_tol.rel *= 0.5;
  body_tol.abs *= 0.5;

  auto integrate_body = [&](double upper) {
    SingularIntegrandSpec body = spec;
    body.far_endpoint = spec.singular_endpoint + upper;
    if (policy.singular_start) return integrate_sqrt_singularity(body, body_tol);
    return integrate_adaptive([&g](double d) { return g(d); }, 0.0, upper, body_tol);
  };

  // A first pass up to the probe start sets the scale of the tolerance.
  const QuadratureResult head = integrate_body(policy.start_offset);
  const double scale = std::max(tol.abs, tol.rel * std::fabs(head.value));
  double cut = policy.start_offset;
  if (M > 0.0) {
    const double needed = std::log(2.0 * M / (r * scale)) / r;
    cut = std::max(cut, needed);
  }

  QuadratureResult out = integrate_body(cut);
  out.evaluations += head.evaluations + static_cast<std::size_t>(policy.probes);
  out.tail_bound = M * std::exp(-r * cut) / r;
  out.error_estimate += out.tail_bound;
  return out;
}

}  // namespace minhyp::quad
