#include "minhyp/jacobi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "minhyp/errors.hpp"
#include "minhyp/hyperbolic.hpp"
#include "minhyp/roots.hpp"
#include "ode_util.hpp"

namespace minhyp {

namespace {

// Field values feed second differences at h ~ 1e-3, so B is integrated well
// below the default tolerance.
constexpr quad::Tolerance kFieldTol{1e-13, 1e-15, 4000};

double log_ratio(const Catenoid& c, double rho) { return hyp::log_sinh_ratio(c.a(), rho - c.a()); }

// Cumulative B_1 along increasing rho, in the variable s = sqrt(rho - a)
// where the integrand 2 s b(s^2) is smooth.
class CumulativeB {
 public:
  explicit CumulativeB(const Catenoid& c) : n_(c.n()), a_(c.a()) {}

  double advance(double rho) {
    const double s = std::sqrt(std::max(rho - a_, 0.0));
    if (s > s_) {
      const int n = n_;
      const double a = a_;
      const auto r = quad::integrate_adaptive(
          [n, a](double x) { return 2.0 * x * b_integrand(n, a, x * x); }, s_, s, kFieldTol);
      value_ += r.value;
      s_ = s;
    }
    return value_;
  }

 private:
  int n_;
  double a_;
  double s_ = 0.0;
  double value_ = 0.0;
};

void require_height(const Catenoid& c, double t, const char* who) {
  if (!std::isfinite(t) || !(std::fabs(t) < c.half_height()))
    throw DomainError(std::string(who) + ": |t| must be < T(a) = " +
                      std::to_string(c.half_height()));
}

double W1_at_rho(const Catenoid& c, double rho) {
  return e1_at_rho(c, rho) + c.constant_C() * v1_at_rho(c, rho);
}

// First rho past `start` where g turns positive, doubling the step; returns
// the bracket [lo, hi] with g(lo) <= 0 < g(hi).
template <typename G>
std::array<double, 3> bracket_upward(const Catenoid& c, G&& g, double start, const char* who) {
  double lo = start;
  double step = 0.25;
  double hi = c.a() + step;
  double g_hi = g(hi);
  while (g_hi <= 0.0) {
    lo = hi;
    step *= 2.0;
    hi = c.a() + step;
    if (step > 700.0) throw InternalError(std::string(who) + ": no sign change found");
    g_hi = g(hi);
  }
  return {lo, hi, g_hi};
}

}  // namespace

// ---------------------------------------------------------------------------

double v1_at_rho(const Catenoid& c, double rho) {
  if (!(rho >= c.a())) throw DomainError("v_1 needs rho >= a");
  return std::sqrt(-std::expm1(-(2.0 * c.n() - 2.0) * log_ratio(c, rho)));
}

double A1_at_rho(const Catenoid& c, double rho) {
  if (!(rho >= c.a())) throw DomainError("A_1 needs rho >= a");
  const double d = rho - c.a();
  return std::exp(-hyp::log_cosh_ratio(c.a(), d) - (c.n() - 2) * hyp::log_sinh_ratio(c.a(), d));
}

quad::QuadratureResult B1_at_rho(const Catenoid& c, double rho) {
  if (!(rho >= c.a())) throw DomainError("B_1 needs rho >= a");
  if (rho == c.a()) return {};
  const int n = c.n();
  const double a = c.a();
  quad::SingularIntegrandSpec spec{[n, a](double d) { return b_integrand(n, a, d); }, a, rho, 0.0};
  return quad::integrate_sqrt_singularity(spec, kFieldTol);
}

double e1_at_rho(const Catenoid& c, double rho) {
  return -A1_at_rho(c, rho) + B1_at_rho(c, rho).value * v1_at_rho(c, rho);
}

double field_v(const Catenoid& c, double t) {
  require_height(c, t, "field_v");
  const double grid[1] = {t};
  const RotationProfilePoint p = c.profile(grid).front();
  return p.f_t / std::hypot(1.0, p.f_t);
}

double field_e(const Catenoid& c, double t) {
  require_height(c, t, "field_e");
  const double grid[1] = {t};
  const RotationProfilePoint p = c.profile(grid).front();
  const double v = std::fabs(p.f_t) / std::hypot(1.0, p.f_t);
  return -A1_at_rho(c, p.f) + B1_at_rho(c, p.f).value * v;
}

std::pair<double, double> coefficients_AB(const Catenoid& c, double t) {
  if (t < 0.0) throw DomainError("coefficients_AB is defined for t >= 0 only");
  require_height(c, t, "coefficients_AB");
  const double rho = t == 0.0 ? c.a() : c.profile(std::span<const double>(&t, 1)).front().f;
  return {A1_at_rho(c, rho), B1_at_rho(c, rho).value};
}

double field_w(const Catenoid& c, double alpha, double t) {
  if (!(alpha > 0.0 && alpha < c.half_height()))
    throw DomainError("field_w needs 0 < alpha < T(a)");
  require_height(c, t, "field_w");
  const double grid[2] = {alpha, t};
  const auto s = sample_fields(c, grid);
  return s[0].e * s[1].v + s[0].v * s[1].e;
}

double field_h_gamma(const Catenoid& c, double t) {
  require_height(c, t, "field_h_gamma");
  const double f = c.profile(std::span<const double>(&t, 1)).front().f;
  return std::exp(-(c.n() - 1) * log_ratio(c, f));
}

std::vector<JacobiFieldSample> sample_fields(const Catenoid& c, std::span<const double> t_grid) {
  const auto profile = c.profile(t_grid);
  std::vector<std::size_t> order(t_grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return profile[i].f < profile[j].f; });

  CumulativeB cumulative(c);
  std::vector<JacobiFieldSample> out(t_grid.size());
  for (std::size_t i : order) {
    const RotationProfilePoint& p = profile[i];
    const double rho = std::max(p.f, c.a());
    JacobiFieldSample s;
    s.t = p.t;
    s.v = p.f_t / std::hypot(1.0, p.f_t);
    s.A = A1_at_rho(c, rho);
    s.B = cumulative.advance(rho);
    s.e = -s.A + s.B * std::fabs(s.v);
    s.h_gamma = std::exp(-(c.n() - 1) * log_ratio(c, rho));
    out[i] = s;
  }
  return out;
}

// ---------------------------------------------------------------------------

double threshold_sigma(const Catenoid& c) {
  auto E = [&c](double rho) { return e1_at_rho(c, rho); };
  const auto [lo, hi, g_hi] = bracket_upward(c, E, c.a(), "threshold_sigma");
  const double g_lo = lo == c.a() ? -1.0 : E(lo);
  const double rho = find_root(E, lo, hi, 1e-12, g_lo, g_hi);
  return c.lambda(rho);
}

double threshold_tau(const Catenoid& c, std::optional<double> sigma) {
  const double s = sigma.value_or(threshold_sigma(c));
  const double rho_sigma = c.profile_inverse(s);
  auto W = [&c](double rho) { return W1_at_rho(c, rho); };
  const double w_hi = W(rho_sigma);
  if (!(w_hi > 0.0)) throw InternalError("threshold_tau: W(a, sigma) is not positive");
  const double rho = find_root(W, c.a(), rho_sigma, 1e-12, -1.0, w_hi);
  return c.lambda(rho);
}

double limit_W(const Catenoid& c, double alpha) {
  if (!(alpha > 0.0 && alpha < c.half_height())) throw DomainError("limit_W needs 0 < alpha < T(a)");
  const double grid[1] = {alpha};
  const JacobiFieldSample s = sample_fields(c, grid).front();
  return s.e + c.constant_C() * s.v;
}

std::optional<double> threshold_beta(const Catenoid& c, double alpha, double zero_tol) {
  if (!(alpha > 0.0 && alpha < c.half_height()))
    throw DomainError("threshold_beta needs 0 < alpha < T(a)");
  const double grid[1] = {alpha};
  const JacobiFieldSample at_alpha = sample_fields(c, grid).front();
  const double W = at_alpha.e + c.constant_C() * at_alpha.v;
  if (W <= zero_tol) return std::nullopt;

  // For t > 0: w = e(alpha) v_1(rho) + v(alpha) e_1(rho); w(a) = -v(alpha) < 0.
  auto w = [&](double rho) { return at_alpha.e * v1_at_rho(c, rho) + at_alpha.v * e1_at_rho(c, rho); };
  const auto [lo, hi, g_hi] = bracket_upward(c, w, c.a(), "threshold_beta");
  const double g_lo = lo == c.a() ? -at_alpha.v : w(lo);
  if (g_lo > 0.0) throw InternalError("threshold_beta: bracket inconsistent with W(a, alpha) > 0");
  const double rho = find_root(w, lo, hi, 1e-12, g_lo, g_hi);
  return c.lambda(rho);
}

StabilityThresholds stability_thresholds(const Catenoid& c) {
  StabilityThresholds th;
  th.sigma = threshold_sigma(c);
  th.tau = threshold_tau(c, th.sigma);
  th.C = c.constant_C();
  return th;
}

namespace {

std::vector<double> open_uniform(double lo, double hi, int samples) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) t[static_cast<std::size_t>(i)] = lo + (hi - lo) * (i + 0.5) / samples;
  return t;
}

}  // namespace

int count_sign_changes_e(const Catenoid& c, int samples) {
  const auto t = open_uniform(0.0, c.half_height(), samples);
  const auto fields = sample_fields(c, t);
  std::vector<double> e(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) e[i] = fields[i].e;
  return static_cast<int>(sign_changes(e).size());
}

int count_sign_changes_W(const Catenoid& c, double sigma, int samples) {
  const auto t = open_uniform(0.0, sigma, samples);
  const auto fields = sample_fields(c, t);
  std::vector<double> W(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) W[i] = fields[i].e + c.constant_C() * fields[i].v;
  return static_cast<int>(sign_changes(W).size());
}

int count_sign_changes_w(const Catenoid& c, double alpha, int samples) {
  auto t = open_uniform(0.0, c.half_height(), samples);
  t.push_back(alpha);
  const auto fields = sample_fields(c, t);
  const JacobiFieldSample& at_alpha = fields.back();
  std::vector<double> w(fields.size() - 1);
  for (std::size_t i = 0; i + 1 < fields.size(); ++i)
    w[i] = at_alpha.e * fields[i].v + at_alpha.v * fields[i].e;
  return static_cast<int>(sign_changes(w).size());
}

// ---------------------------------------------------------------------------

double envelope_determinant(const Catenoid& c, double t) {
  const ProfileSensitivity s = c.profile_sensitivity(std::span<const double>(&t, 1)).front();
  const double ch = std::cosh(0.5 * s.f);
  const double x_a = 0.5 * s.f_a / (ch * ch);
  const double x_t = 0.5 * s.f_t / (ch * ch);
  const double y_a = 0.0;
  const double y_t = 1.0;
  return x_a * y_t - x_t * y_a;
}

double envelope_sigma(const Catenoid& c) {
  constexpr int samples = 2000;
  const auto t = open_uniform(0.0, c.switch_height(), samples);
  const auto sens = c.profile_sensitivity(t);
  std::vector<double> fa(sens.size());
  for (std::size_t i = 0; i < sens.size(); ++i) fa[i] = sens[i].f_a;
  const auto changes = sign_changes(fa);
  if (changes.empty())
    throw DomainError("envelope_sigma: no contact with the envelope inside the ODE range");
  const std::size_t i = changes.front();
  auto D = [&c](double x) { return envelope_determinant(c, x); };
  return find_root(D, t[i], t[i + 1], 1e-13);
}

// ---------------------------------------------------------------------------

namespace {

double mu_of_mode(int n, int k) { return static_cast<double>(k) * (k + n - 2); }

// Fills diag/offdiag from nodes, density, flux, potential.
void finish_operator(ModeOperator& op) {
  const std::size_t N = op.nodes.size() - 1;
  const double h2 = op.h * op.h;
  op.diag.assign(N - 1, 0.0);
  op.offdiag.assign(N >= 2 ? N - 2 : 0, 0.0);
  for (std::size_t i = 1; i < N; ++i) {
    op.diag[i - 1] = (op.flux[i - 1] + op.flux[i]) / (h2 * op.density[i]) + op.potential[i];
    if (i + 1 < N)
      op.offdiag[i - 1] = -op.flux[i] / (h2 * std::sqrt(op.density[i] * op.density[i + 1]));
  }
}

ModeOperator assemble_height(const Catenoid& c, double lo, double hi, int k, std::size_t N) {
  ModeOperator op{c};
  op.lo = lo;
  op.hi = hi;
  op.t_lo = lo;
  op.t_hi = hi;
  op.k = k;
  op.mu_k = mu_of_mode(c.n(), k);
  op.coordinate = ModeCoordinate::height;
  op.h = (hi - lo) / static_cast<double>(N);

  std::vector<double> grid(2 * N + 1);
  for (std::size_t j = 0; j <= 2 * N; ++j) grid[j] = lo + 0.5 * op.h * static_cast<double>(j);
  grid.back() = hi;
  const auto prof = c.profile(grid);

  op.nodes.resize(N + 1);
  op.density.resize(N + 1);
  op.potential.resize(N + 1);
  op.flux.resize(N);
  for (std::size_t j = 0; j <= 2 * N; ++j) {
    const MetricData m = metric_rotation(prof[j], c.n());
    if (j % 2 == 1) {
      op.flux[j / 2] = m.density / m.g_tt;
      continue;
    }
    const CurvatureRecord cr = curvatures_rotation(prof[j], c.n());
    const std::size_t i = j / 2;
    op.nodes[i] = grid[j];
    op.density[i] = m.density;
    op.potential[i] = jacobi_potential(c.n(), cr.normA2, cr.v) + op.mu_k * hyp::csch2(prof[j].f);
  }
  finish_operator(op);
  return op;
}

// Arclength from the neck to distance rho on the upper half.
double arclength_to(const Catenoid& c, double rho) {
  if (rho <= c.a()) return 0.0;
  const int n = c.n();
  const double a = c.a();
  quad::SingularIntegrandSpec spec{
      [n, a](double d) {
        return 1.0 / std::sqrt(-std::expm1(-(2.0 * n - 2.0) * hyp::log_sinh_ratio(a, d)));
      },
      a, rho, 0.0};
  return quad::integrate_sqrt_singularity(spec, kFieldTol).value;
}

ModeOperator assemble_tail(const Catenoid& c, double t_lo, int k, std::size_t N, double rho_cap) {
  const int n = c.n();
  const double a = c.a();
  const double s_lo = std::copysign(arclength_to(c, c.profile_inverse(t_lo)), t_lo);
  const double s_hi = arclength_to(c, rho_cap);
  if (!(s_hi > s_lo)) throw DomainError("assemble_tail_operator: cap lies below the domain start");

  ModeOperator op{c};
  op.lo = s_lo;
  op.hi = s_hi;
  op.t_lo = t_lo;
  op.t_hi = c.half_height();
  op.rho_cap = rho_cap;
  op.k = k;
  op.mu_k = mu_of_mode(n, k);
  op.coordinate = ModeCoordinate::arclength;
  op.h = (s_hi - s_lo) / static_cast<double>(N);

  std::vector<double> grid(2 * N + 1);
  for (std::size_t j = 0; j <= 2 * N; ++j) grid[j] = s_lo + 0.5 * op.h * static_cast<double>(j);
  grid.back() = s_hi;

  // Meridian by arclength s: with phi = f - a and q = (sinh a / sinh f)^{n-1},
  //   phi'' = (n-1) coth(f) q^2,  t' = q,  f' = v (the vertical normal).
  using State3 = std::array<double, 3>;
  auto rhs = [n, a](const State3& y, State3& dy, double) {
    const double q2 = std::exp(-(2.0 * n - 2.0) * hyp::log_sinh_ratio(a, std::max(y[0], 0.0)));
    dy[0] = y[1];
    dy[1] = (n - 1) * hyp::coth(a + y[0]) * q2;
    dy[2] = std::sqrt(q2);
  };
  op.nodes.resize(N + 1);
  op.density.resize(N + 1);
  op.potential.resize(N + 1);
  op.flux.resize(N);
  detail::integrate_symmetric(
      grid, State3{0.0, 0.0, 0.0}, rhs, 1e-14, 1e-13, [&](std::size_t j, const State3& y) {
        const double f = a + y[0];
        const double L = hyp::log_sinh_ratio(a, y[0]);
        const double density = std::exp((n - 1) * hyp::log_sinh(f));
        if (j % 2 == 1) {
          op.flux[j / 2] = density;
          return;
        }
        const double q2 = std::exp(-(2.0 * n - 2.0) * L);
        const double v = y[1];
        const double normA2 = n * (n - 1.0) * hyp::coth(f) * hyp::coth(f) * q2;
        const std::size_t i = j / 2;
        op.nodes[i] = grid[j];
        op.density[i] = density;
        op.potential[i] = jacobi_potential(n, normA2, v) + op.mu_k * hyp::csch2(f);
      });
  finish_operator(op);
  return op;
}

std::size_t intervals_for(double length, double h) {
  if (!(h > 0.0)) throw DomainError("mesh size h must be positive");
  return std::max<std::size_t>(4, static_cast<std::size_t>(std::llround(length / h)));
}

}  // namespace

ModeOperator assemble_mode_operator(const Catenoid& c, double lo, double hi, int k, double h) {
  const double T = c.half_height();
  if (k < 0) throw DomainError("mode index k must be >= 0");
  if (!(lo > -T && hi < T && lo < hi))
    throw DomainError("mode operator domain must satisfy -T(a) < lo < hi < T(a); use "
                      "assemble_tail_operator for domains reaching T(a)");
  return assemble_height(c, lo, hi, k, intervals_for(hi - lo, h));
}

ModeOperator assemble_tail_operator(const Catenoid& c, double t_lo, int k, double h,
                                    std::optional<double> rho_cap) {
  if (k < 0) throw DomainError("mode index k must be >= 0");
  if (!(std::fabs(t_lo) < c.half_height())) throw DomainError("tail operator needs |t_lo| < T(a)");
  const double cap = rho_cap.value_or(c.rho_max());
  if (!(cap > c.a())) throw DomainError("tail operator needs rho_cap > a");
  const double length = arclength_to(c, cap) - std::copysign(arclength_to(c, c.profile_inverse(t_lo)), t_lo);
  return assemble_tail(c, t_lo, k, intervals_for(length, h), cap);
}

int tridiagonal_count_below(std::span<const double> d, std::span<const double> e, double x) {
  int count = 0;
  double q = 1.0;
  constexpr double tiny = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? 0.0 : off / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> tridiagonal_lowest(std::span<const double> d, std::span<const double> e, int m) {
  if (d.empty()) return {};
  if (e.size() + 1 != d.size()) throw std::invalid_argument("tridiagonal: size mismatch");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = (i > 0 ? std::fabs(e[i - 1]) : 0.0) + (i < e.size() ? std::fabs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const int count = std::min<int>(m, static_cast<int>(d.size()));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int j = 0; j < count; ++j) {
    // j-th eigenvalue: smallest x with count_below(x) > j.
    double a = j == 0 ? lo : out.back();
    double b = hi;
    for (int it = 0; it < 200 && b - a > 2.0 * eps * std::max(std::fabs(a), std::fabs(b)) + 1e-300;
         ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (tridiagonal_count_below(d, e, mid) > j)
        b = mid;
      else
        a = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

SpectralResult eigen_bottom(const ModeOperator& op, int m) {
  if (m < 1) throw std::invalid_argument("eigen_bottom needs m >= 1");
  const std::size_t N = op.nodes.size() - 1;
  const ModeOperator fine = op.coordinate == ModeCoordinate::height
                                ? assemble_height(op.catenoid, op.lo, op.hi, op.k, 2 * N)
                                : assemble_tail(op.catenoid, op.t_lo, op.k, 2 * N, op.rho_cap);
  SpectralResult r;
  r.h_used = op.h;
  r.eigenvalues = tridiagonal_lowest(op.diag, op.offdiag, m);
  r.eigenvalues_fine = tridiagonal_lowest(fine.diag, fine.offdiag, m);
  const std::size_t count = std::min(r.eigenvalues.size(), r.eigenvalues_fine.size());
  for (std::size_t i = 0; i < count; ++i) {
    const double coarse = r.eigenvalues[i];
    const double refined = r.eigenvalues_fine[i];
    r.richardson.push_back((4.0 * refined - coarse) / 3.0);
    r.richardson_error.push_back(std::fabs(refined - coarse) / 3.0);
  }
  r.inertia_count = tridiagonal_count_below(op.diag, op.offdiag, 0.0);
  const int fine_count = tridiagonal_count_below(fine.diag, fine.offdiag, 0.0);
  if (!r.richardson.empty()) {
    r.richardson_estimate = r.richardson.front();
    r.lambda1_is_zero = std::fabs(r.richardson.front()) < 5.0 * r.richardson_error.front();
  }
  if (fine_count >= static_cast<int>(count)) {
    r.negative_count = fine_count;
  } else {
    int negatives = 0;
    for (std::size_t i = 0; i < count; ++i)
      if (r.richardson[i] < 0.0 && std::fabs(r.richardson[i]) >= 5.0 * r.richardson_error[i])
        ++negatives;
    r.negative_count = negatives;
  }
  return r;
}

double jacobi_residual(const ModeOperator& op, std::span<const double> field) {
  if (field.size() != op.nodes.size())
    throw std::invalid_argument("jacobi_residual: field has " + std::to_string(field.size()) +
                                " values but the operator grid has " +
                                std::to_string(op.nodes.size()) + " nodes");
  const std::size_t N = op.nodes.size() - 1;
  const double h2 = op.h * op.h;
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 <= N; ++i) {
    const double div = (op.flux[i] * (field[i + 1] - field[i]) - op.flux[i - 1] * (field[i] - field[i - 1])) / h2;
    const double Ju = -div / op.density[i] + op.potential[i] * field[i];
    worst = std::max(worst, std::fabs(Ju));
  }
  return worst;
}

// ---------------------------------------------------------------------------

namespace {

// Dimension of degree-k spherical harmonics on S^{n-1}.
int harmonic_multiplicity(int n, int k) {
  auto binom = [](int top, int bottom) {
    if (bottom < 0 || top < bottom) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= bottom; ++i) r = r * (top - bottom + i) / i;
    return r;
  };
  return static_cast<int>(std::lround(binom(k + n - 1, n - 1) - binom(k + n - 3, n - 1)));
}

}  // namespace

IndexCertificate certify_index(const Catenoid& c, std::span<const double> S_list,
                               std::span<const double> h_list, int k_max) {
  IndexCertificate cert;
  cert.n = c.n();
  cert.a = c.a();
  cert.T = c.half_height();
  cert.k_max = k_max;
  cert.sigma = threshold_sigma(c);
  cert.note =
      "modes k > k_max: the mode-k potential exceeds the mode-1 potential by "
      "(mu_k - mu_1)/sinh^2(f) > 0 and mode 1 carries the positive Jacobi field h_gamma, so "
      "those modes have no negative Dirichlet eigenvalue";

  int index = 0;
  for (double S : S_list) {
    if (!(S > 0.0 && S < cert.T)) {
      cert.failures.push_back("S = " + std::to_string(S) + " outside (0, T(a))");
      continue;
    }
    if (std::fabs(S - cert.sigma) < 1e-6 * cert.T) {
      cert.failures.push_back("S = " + std::to_string(S) + " too close to sigma(a) to classify");
      continue;
    }
    for (double h : h_list) {
      int total = 0;
      for (int k = 0; k <= k_max; ++k) {
        ModeCheck check;
        check.S = S;
        check.h = h;
        check.k = k;
        check.expected_negative = (k == 0 && S > cert.sigma) ? 1 : 0;
        check.spectrum = eigen_bottom(assemble_mode_operator(c, -S, S, k, h), 2);
        check.ok = check.spectrum.negative_count == check.expected_negative;
        if (!check.ok) {
          std::ostringstream msg;
          msg << "S=" << S << " h=" << h << " k=" << k << ": " << check.spectrum.negative_count
              << " negative eigenvalue(s), expected " << check.expected_negative;
          cert.failures.push_back(msg.str());
        }
        total += check.spectrum.negative_count * harmonic_multiplicity(c.n(), k);
        cert.checks.push_back(std::move(check));
      }
      index = std::max(index, total);
    }
  }
  cert.index = index;
  cert.passed = cert.failures.empty() && index == 1;
  if (cert.failures.empty() && index != 1)
    cert.failures.push_back("no domain with S > sigma(a) was sampled; index not witnessed");
  return cert;
}

}  // namespace minhyp
