#pragma once

// Adaptive Gauss-Kronrod quadrature for the improper integrals that define
// catenoid and translation-surface profiles: an inverse square-root
// singularity at the lower endpoint and, optionally, an exponentially
// decaying tail on [a, inf).

#include <cstddef>
#include <functional>

namespace minhyp::quad {

struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-12;
  std::size_t max_panels = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // includes tail_bound
  std::size_t evaluations = 0;
  double tail_bound = 0.0;      // analytic bound on the truncated tail, if any
};

using Integrand = std::function<double(double)>;

/// Integrand g(u) with g(u) (u - a)^{1/2} bounded and smooth near the
/// singular endpoint a. The handle is called with the offset u - a >= 0
/// rather than u itself, so callers can evaluate u - a without cancellation.
struct SingularIntegrandSpec {
  Integrand integrand;
  double singular_endpoint = 0.0;
  double far_endpoint = 0.0;  // may be +infinity
  double decay_rate = 0.0;    // |g| <= M exp(-decay_rate (u - a)) far out
};

/// Globally adaptive 7/15-point Gauss-Kronrod on a finite interval. Never
/// evaluates f at the endpoints. Throws AccuracyError if max_panels is
/// reached before the tolerance.
QuadratureResult integrate_adaptive(const Integrand& f, double lo, double hi,
                                    const Tolerance& tol = {});

/// Finite far endpoint. Substitutes u = a + s^2, which turns the
/// inverse-square-root singularity into a smooth integrand 2 s g(a + s^2),
/// then refines adaptively.
QuadratureResult integrate_sqrt_singularity(const SingularIntegrandSpec& spec,
                                            const Tolerance& tol = {});

/// Same substitution on 2^level equal panels in s, no adaptivity. Used to
/// study convergence under refinement.
QuadratureResult integrate_sqrt_singularity_uniform(const SingularIntegrandSpec& spec,
                                                    int level);

struct TailPolicy {
  double start_offset = 1.0;  // first probe at a + start_offset
  double probe_span = 8.0;    // envelope probes cover [start, start + span]
  int probes = 9;
  double safety = 2.0;        // multiplies the sampled envelope constant
  double max_growth = 4.0;    // allowed growth of |g| e^{r u} across the probes
  bool singular_start = true; // apply the s^2 substitution on the body
};

/// Infinite far endpoint. Samples M = max |g(u)| e^{r (u - a)} on the probe
/// window, truncates at U with M e^{-r (U - a)} / r below half the
/// tolerance, and integrates [a, U] adaptively. Throws DomainError when the
/// sampled envelope grows (the integrand does not decay at the stated rate).
QuadratureResult integrate_exponential_tail(const SingularIntegrandSpec& spec,
                                            const TailPolicy& policy = {},
                                            const Tolerance& tol = {});

}  // namespace minhyp::quad
