#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "minhyp/catenoid.hpp"
#include "minhyp/errors.hpp"
#include "minhyp/jacobi.hpp"
#include "oracles.hpp"

using namespace minhyp;

TEST_CASE("v is the vertical normal component of the ODE profile") {
  const Catenoid c(2, 1.0);
  std::vector<double> t{0.0, 0.3, 0.8, 1.2};
  const auto p = c.profile_ode(t);
  for (std::size_t i = 0; i < t.size(); ++i)
    CHECK(field_v(c, t[i]) == doctest::Approx(p[i].f_t / std::hypot(1.0, p[i].f_t)).epsilon(1e-10));
}

// The variation field of the family in a, projected on the normal.
TEST_CASE("e against a finite difference in a") {
  for (int n : {2, 3}) {
    const double a = 1.0;
    const Catenoid c(n, a);
    const double h = 1e-4;
    const Catenoid cp(n, a + h), cm(n, a - h);
    for (double x : {0.0, 0.2, 0.5}) {
      const double t = x * c.half_height();
      const double f_a = (cp.profile_inverse(t) - cm.profile_inverse(t)) / (2 * h);
      const double tt[1] = {t};
      const double f_t = c.profile_ode(tt)[0].f_t;
      CHECK(std::fabs(field_e(c, t) - (-f_a / std::hypot(1.0, f_t))) < 1e-5);
    }
  }
}

TEST_CASE("parity and the zero of e") {
  const Catenoid c(3, 1.0);
  const double T = c.half_height();
  for (double x : {0.1, 0.6, 0.9}) {
    CHECK(field_v(c, -x * T) == doctest::Approx(-field_v(c, x * T)));
    CHECK(field_e(c, -x * T) == doctest::Approx(field_e(c, x * T)));
  }
  const double sigma = threshold_sigma(c);
  CHECK(std::fabs(field_e(c, sigma)) < 1e-9);
  CHECK(count_sign_changes_e(c, 2000) == 1);
  CHECK(field_h_gamma(c, 0.3 * T) > 0.0);
}

// The envelope touches C_a where the catenary moves neither in x nor in t,
// so sigma is a root of t -> f_a(a, t); located here by bisection on a
// central difference in a.
TEST_CASE("sigma equals the envelope contact from a finite difference in a") {
  for (int n : {2, 3})
    for (double a : {0.5, 1.0, 2.0}) {
      const Catenoid c(n, a);
      const double h = 1e-5;
      const Catenoid cp(n, a + h), cm(n, a - h);
      auto g = [&](double t) { return cp.profile_inverse(t) - cm.profile_inverse(t); };
      double lo = 0.0, hi = 0.999 * std::min(cp.half_height(), cm.half_height());
      REQUIRE(g(lo) * g(hi) < 0.0);
      for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(lo) * g(mid) <= 0.0 ? hi : lo) = mid;
      }
      CHECK(std::fabs(0.5 * (lo + hi) - threshold_sigma(c)) < 1e-6);
      CHECK(std::fabs(envelope_sigma(c) - threshold_sigma(c)) < 1e-6);
    }
}

TEST_CASE("threshold ordering and beta") {
  const Catenoid c(2, 1.0);
  const StabilityThresholds th = stability_thresholds(c);
  CHECK(0.0 < th.tau);
  CHECK(th.tau < th.sigma);
  CHECK(th.sigma < c.half_height());
  CHECK(th.C == doctest::Approx(c.constant_C()));
  const auto beta = threshold_beta(c, 0.5 * (th.tau + c.half_height()));
  REQUIRE(beta.has_value());
  CHECK(*beta > th.tau);
  CHECK(*beta < c.half_height());
  // At alpha = sigma the conjugate point is sigma itself.
  const auto beta_sigma = threshold_beta(c, th.sigma);
  REQUIRE(beta_sigma.has_value());
  CHECK(*beta_sigma == doctest::Approx(th.sigma).epsilon(1e-6));
}

TEST_CASE("tridiagonal solver against the discrete Dirichlet Laplacian") {
  const int N = 50;
  const double h = std::numbers::pi / N;
  std::vector<double> d(N - 1, 2.0 / (h * h)), e(N - 2, -1.0 / (h * h));
  const auto lam = tridiagonal_lowest(d, e, 3);
  for (int k = 1; k <= 3; ++k) {
    const double exact = 4.0 / (h * h) * std::pow(std::sin(k * h / 2), 2);
    CHECK(lam[k - 1] == doctest::Approx(exact).epsilon(1e-12));
  }
  CHECK(tridiagonal_count_below(d, e, 5.0) == 2);
  CHECK(tridiagonal_count_below(d, e, 0.5) == 0);
}

TEST_CASE("Jacobi fields annihilated at second order, several necks") {
  for (auto [n, a] : std::vector<std::pair<int, double>>{{2, 0.5}, {4, 2.0}}) {
    const Catenoid c(n, a);
    const double T = c.half_height();
    auto res = [&](int k, double h, auto field) {
      const ModeOperator op = assemble_mode_operator(c, -0.7 * T, 0.7 * T, k, h);
      std::vector<double> u;
      for (double t : op.nodes) u.push_back(field(t));
      return jacobi_residual(op, u);
    };
    auto v = [&](double t) { return field_v(c, t); };
    auto e = [&](double t) { return field_e(c, t); };
    auto hg = [&](double t) { return field_h_gamma(c, t); };
    CHECK(res(0, 1e-2, v) / res(0, 5e-3, v) > 3.0);
    CHECK(res(0, 1e-2, e) / res(0, 5e-3, e) > 3.0);
    CHECK(res(1, 1e-2, hg) / res(1, 5e-3, hg) > 3.0);
  }
  const Catenoid c(2, 1.0);
  const ModeOperator op = assemble_mode_operator(c, -0.5, 0.5, 0, 1e-2);
  std::vector<double> wrong(op.nodes.size() + 1, 0.0);
  CHECK_THROWS_AS(jacobi_residual(op, wrong), std::invalid_argument);
}

TEST_CASE("lowest eigenvalue vanishes on the critical domain") {
  for (int n : {2, 3}) {
    const Catenoid c(n, 1.0);
    const double sigma = threshold_sigma(c);
    const SpectralResult r = eigen_bottom(assemble_mode_operator(c, -sigma, sigma, 0, 1e-2), 2);
    CHECK(r.lambda1_is_zero);
    CHECK(std::fabs(r.richardson[0]) < 5.0 * r.richardson_error[0]);
    CHECK(r.richardson[1] > 0.0);
  }
}

TEST_CASE("negative counts across sigma and higher modes") {
  const Catenoid c(2, 1.0);
  const double T = c.half_height();
  const double sigma = threshold_sigma(c);
  auto count = [&](double S, int k) {
    return eigen_bottom(assemble_mode_operator(c, -S, S, k, 1e-2), 2).negative_count;
  };
  CHECK(count(0.8 * sigma, 0) == 0);
  CHECK(count(0.5 * (sigma + T), 0) == 1);
  CHECK(count(0.95 * T, 0) == 1);
  double prev = -INFINITY;
  for (int k = 1; k <= 4; ++k) {
    const double l = eigen_bottom(assemble_mode_operator(c, -0.95 * T, 0.95 * T, k, 1e-2), 1).eigenvalues[0];
    CHECK(l > 0.0);
    CHECK(l > prev);
    prev = l;
  }
}

TEST_CASE("index certificate") {
  const Catenoid c(3, 1.0);
  const double T = c.half_height();
  const double sigma = threshold_sigma(c);
  const double S[2] = {0.5 * sigma, 0.95 * T};
  const double h[1] = {1e-2};
  const IndexCertificate cert = certify_index(c, S, h, 5);
  CHECK(cert.passed);
  CHECK(cert.index == 1);
  const double near_sigma[1] = {sigma};
  const IndexCertificate bad = certify_index(c, near_sigma, h, 1);
  CHECK_FALSE(bad.passed);
  CHECK_FALSE(bad.failures.empty());
}

TEST_CASE("one-sided tail domain sits at the stability boundary") {
  const Catenoid c(2, 1.0);
  const double tau = threshold_tau(c);
  const ModeOperator op = assemble_tail_operator(c, -tau, 0, 2e-2);
  const SpectralResult r = eigen_bottom(op, 1);
  CHECK(std::fabs(r.richardson[0]) < 1e-3);
  CHECK_THROWS_AS(coefficients_AB(c, -0.1), DomainError);
}
