#pragma once

// Jacobi fields and stability structure of the catenoids C_a.
//
// On the upper half (t >= 0, rho = f(a,t) >= a) the fields have closed forms
// in rho:
//   v_1 = (1 - (sinh a / sinh rho)^{2n-2})^{1/2}
//   A_1 = (cosh a / cosh rho) (sinh a / sinh rho)^{n-2}
//   B_1 = coth(a) int_a^rho sech^2(u) lambda_rho(a,u) du
//   e   = -A_1 + B_1 v_1.
// The thresholds sigma, tau, beta are zeros of e, e + C v and w in rho,
// mapped back to heights through lambda.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minhyp/catenoid.hpp"

namespace minhyp {

struct JacobiFieldSample {
  double t = 0.0;
  double v = 0.0;
  double e = 0.0;
  double A = 0.0;  // A(a, |t|)
  double B = 0.0;  // B(a, |t|)
  double h_gamma = 0.0;
};

struct StabilityThresholds {
  double sigma = 0.0;
  double tau = 0.0;
  double C = 0.0;
};

// -- fields in the rho variable (upper half) --------------------------------

double v1_at_rho(const Catenoid& c, double rho);
double A1_at_rho(const Catenoid& c, double rho);
quad::QuadratureResult B1_at_rho(const Catenoid& c, double rho);
double e1_at_rho(const Catenoid& c, double rho);

// -- fields in the height variable ------------------------------------------

/// Vertical Jacobi field f_t (1 + f_t^2)^{-1/2}; odd in t.
double field_v(const Catenoid& c, double t);
/// Variation field -A + B v; even in t, e(0) = -1, e -> C(a) at T(a).
double field_e(const Catenoid& c, double t);
/// (A(a,t), B(a,t)) for 0 <= t < T(a).
std::pair<double, double> coefficients_AB(const Catenoid& c, double t);
/// w(a, alpha, t) = e(alpha) v(t) + v(alpha) e(t).
double field_w(const Catenoid& c, double alpha, double t);
/// Radial factor (sinh a / sinh f)^{n-1} of the horizontal field h_gamma.
double field_h_gamma(const Catenoid& c, double t);

/// All fields on a grid (any order and sign), sharing one profile pass and
/// one cumulative B quadrature.
std::vector<JacobiFieldSample> sample_fields(const Catenoid& c, std::span<const double> t_grid);

// -- thresholds ---------------------------------------------------------------

/// Unique zero of e(a, .) on (0, T(a)).
double threshold_sigma(const Catenoid& c);
/// Unique zero of W(a, .) = e + C v on (0, sigma(a)).
double threshold_tau(const Catenoid& c, std::optional<double> sigma = {});
/// Positive zero of w(a, alpha, .) if W(a, alpha) > 0, none otherwise.
std::optional<double> threshold_beta(const Catenoid& c, double alpha, double zero_tol = 1e-9);
StabilityThresholds stability_thresholds(const Catenoid& c);

/// Limit W(a, alpha) of w(a, alpha, t) as t -> T(a).
double limit_W(const Catenoid& c, double alpha);

/// Number of sign changes of e(a, .), W(a, .) and w(a, alpha, .) on uniform
/// samples of (0, T(a)), (0, sigma(a)) and (0, T(a)).
int count_sign_changes_e(const Catenoid& c, int samples);
int count_sign_changes_W(const Catenoid& c, double sigma, int samples);
int count_sign_changes_w(const Catenoid& c, double alpha, int samples);

// -- envelope -----------------------------------------------------------------

/// x_a y_t - x_t y_a for the catenary (x, y) = (tanh(f(a,t)/2), t), with f_a
/// from the variational equation of the profile ODE.
double envelope_determinant(const Catenoid& c, double t);
/// Zero of the envelope determinant on (0, T(a)).
double envelope_sigma(const Catenoid& c);

// -- spectral -----------------------------------------------------------------

enum class ModeCoordinate { height, arclength };

/// Dirichlet discretization of the mode-k Jacobi operator
///   u -> -density^{-1} (density g^{-1} u')' + [(n-1)(1-v^2) - |A|^2 + mu_k / sinh^2 f] u
/// with mu_k = k (k + n - 2), on a uniform grid. The symmetric tridiagonal
/// `diag`/`offdiag` act on density^{1/2} u at interior nodes.
struct ModeOperator {
  explicit ModeOperator(Catenoid c) : catenoid(std::move(c)) {}

  Catenoid catenoid;
  double lo = 0.0;  // domain in t (height) or arclength
  double hi = 0.0;
  int k = 0;
  double mu_k = 0.0;
  double h = 0.0;
  ModeCoordinate coordinate = ModeCoordinate::height;
  double t_lo = 0.0;      // requested height range (tail variant: t_hi = T(a))
  double t_hi = 0.0;
  double rho_cap = 0.0;   // tail variant only
  std::vector<double> nodes;      // N + 1 nodes including the Dirichlet ends
  std::vector<double> density;    // at nodes
  std::vector<double> flux;       // density / g at the N half nodes
  std::vector<double> potential;  // at nodes
  std::vector<double> diag;       // N - 1 interior entries
  std::vector<double> offdiag;    // N - 2 entries
};

/// Height-coordinate operator on (lo, hi) with -T(a) < lo < hi < T(a).
ModeOperator assemble_mode_operator(const Catenoid& c, double lo, double hi, int k, double h);

/// Operator on the non-compact domain (t_lo, T(a)), parametrized by
/// arclength and capped with a Dirichlet condition at rho = rho_cap.
/// Eigenvalues bound those of the full domain from above.
ModeOperator assemble_tail_operator(const Catenoid& c, double t_lo, int k, double h,
                                    std::optional<double> rho_cap = {});

struct SpectralResult {
  std::vector<double> eigenvalues;       // lowest m at mesh h
  std::vector<double> eigenvalues_fine;  // lowest m at mesh h/2
  std::vector<double> richardson;        // (4 fine - coarse) / 3
  std::vector<double> richardson_error;  // |fine - coarse| / 3
  int negative_count = 0;
  int inertia_count = 0;  // Sturm count below 0 at mesh h
  double h_used = 0.0;
  double richardson_estimate = 0.0;  // extrapolated lambda_1
  bool lambda1_is_zero = false;      // |lambda_1| < 5 x Richardson error
};

/// Lowest m eigenvalues of op and of its h/2 refinement, with Richardson
/// extrapolation and a Sturm-sequence negative count.
SpectralResult eigen_bottom(const ModeOperator& op, int m = 3);

/// Sturm count of eigenvalues of the symmetric tridiagonal (d, e) below x.
int tridiagonal_count_below(std::span<const double> d, std::span<const double> e, double x);
/// Lowest m eigenvalues of the symmetric tridiagonal (d, e) by bisection.
std::vector<double> tridiagonal_lowest(std::span<const double> d, std::span<const double> e, int m);

/// max |J u| over interior nodes, skipping two nodes at each end. `field`
/// holds one value per node of op.
double jacobi_residual(const ModeOperator& op, std::span<const double> field);

struct ModeCheck {
  double S = 0.0;
  double h = 0.0;
  int k = 0;
  int expected_negative = 0;
  SpectralResult spectrum;
  bool ok = false;
};

struct IndexCertificate {
  int n = 0;
  double a = 0.0;
  double T = 0.0;
  double sigma = 0.0;
  int k_max = 0;
  std::vector<ModeCheck> checks;
  std::vector<std::string> failures;
  bool passed = false;
  int index = 0;  // largest mode-0 negative count observed
  std::string note;
};

/// Mode-wise Dirichlet spectra on D_a(-S, S) for every S and h: mode 0 must
/// have one negative eigenvalue exactly when S > sigma(a), modes 1..k_max
/// none, and counts must agree across meshes.
IndexCertificate certify_index(const Catenoid& c, std::span<const double> S_list,
                               std::span<const double> h_list, int k_max = 5);

}  // namespace minhyp
