#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "minhyp/catenoid.hpp"
#include "minhyp/errors.hpp"
#include "minhyp/hgeom.hpp"
#include "oracles.hpp"

using namespace minhyp;

TEST_CASE("lambda against a dense trapezoid sum") {
  const double ref = static_cast<double>(oracle::lambda_trapezoid(2, 1.0L, 2.0L));
  CHECK(std::fabs(lambda(2, 1.0, 2.0) - ref) < 1e-9);
  const double ref3 = static_cast<double>(oracle::lambda_trapezoid(3, 0.5L, 1.7L));
  CHECK(std::fabs(lambda(3, 0.5, 1.7) - ref3) < 1e-9);
  CHECK(lambda(2, 1.0, 1.0) == 0.0);
}

TEST_CASE("half height and C(a) against the sec^2 substitution") {
  for (int n : {2, 3, 4})
    for (double a : {0.5, 1.0, 2.0}) {
      const Catenoid c(n, a);
      CHECK(std::fabs(c.half_height() - static_cast<double>(oracle::half_height_simpson(n, a))) < 1e-8);
      CHECK(std::fabs(c.constant_C() - static_cast<double>(oracle::constant_C_simpson(n, a))) < 1e-8);
    }
}

TEST_CASE("T'(a) equals C(a)") {
  for (int n : {2, 3})
    for (double a : {0.5, 1.0, 2.0}) {
      auto T = [n](double x) { return half_height(n, x); };
      const double C = Catenoid(n, a).constant_C();
      const double e1 = std::fabs(oracle::central(T, a, 4e-3) - C);
      const double e2 = std::fabs(oracle::central(T, a, 2e-3) - C);
      CHECK(e2 < 1e-5);
      CHECK((e2 < 1e-7 || e1 / e2 > 3.0));
      CHECK(height_derivative(n, a).value == doctest::Approx(C).epsilon(1e-9));
    }
}

TEST_CASE("height is increasing and below pi/(n-1)") {
  for (int n : {2, 3, 4}) {
    double prev = 0.0;
    for (double a : {0.01, 0.1, 0.5, 1.0, 3.0, 8.0}) {
      const double h = height(n, a);
      CHECK(h > prev);
      CHECK(h < std::numbers::pi / (n - 1));
      prev = h;
    }
  }
}

TEST_CASE("small necks: h_R(a) is asymptotic to 2a log(2/a) for n = 2") {
  // Reference value from the sec^2 oracle; it lies above 1e-2 at a = 1e-3.
  const double a = 1e-3;
  const double h = height(2, a);
  CHECK(h == doctest::Approx(2.0 * static_cast<double>(oracle::half_height_simpson(2, a, 2000000))).epsilon(1e-7));
  CHECK(h == doctest::Approx(0.016588098064529473).epsilon(1e-8));
}

TEST_CASE("profile: inverse round trip, parity, first integral") {
  const Catenoid c(3, 0.7);
  const double T = c.half_height();
  std::vector<double> t;
  for (int i = 0; i <= 10; ++i) t.push_back(0.09 * i * T);
  const auto ode = c.profile_ode(t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(c.lambda(ode[i].f) == doctest::Approx(t[i]).epsilon(1e-9));
    CHECK(rotation_flux(ode[i], 3) == doctest::Approx(std::pow(std::sinh(0.7), 2)).epsilon(1e-11));
  }
  for (double x : {0.1, 0.5, 0.97}) {
    CHECK(c.profile_inverse(x * T) == doctest::Approx(c.profile_inverse(-x * T)).epsilon(1e-14));
  }
  CHECK(c.profile_inverse(0.0) == doctest::Approx(0.7));
  CHECK_THROWS_AS(c.profile_inverse(T * 1.01), DomainError);
}

TEST_CASE("lambda via the complement and the v form") {
  const Catenoid c(2, 1.0);
  for (double rho : {1.001, 1.5, 3.0, 10.0}) {
    CHECK(c.lambda_complement(rho).value == doctest::Approx(c.half_height() - c.lambda(rho)).epsilon(1e-10));
    CHECK(c.lambda_v_form(rho).value == doctest::Approx(c.lambda(rho)).epsilon(1e-9));
  }
}

TEST_CASE("closed-form |A|^2 matches the profile curvatures") {
  const Catenoid c(2, 1.0);
  std::vector<double> t{0.1, 0.5, 1.0};
  for (const auto& p : c.profile(t))
    CHECK(c.extrinsic_data(p.f).normA2 == doctest::Approx(curvatures_rotation(p, 2).normA2).epsilon(1e-8));
}

TEST_CASE("total extrinsic curvature against a dense trapezoid sum") {
  const CurvatureIntegral r = total_extrinsic_curvature(2, 1.0);
  const double ref = static_cast<double>(oracle::total_extrinsic_trapezoid(2, 1.0L, 40.0L));
  CHECK(std::fabs(r.value - ref) < 1e-6);
  CHECK(r.tail_bound < 1e-8);
  const CurvatureIntegral with_sphere = total_extrinsic_curvature(2, 1.0, true);
  CHECK(with_sphere.value == doctest::Approx(r.value * sphere_area(2)).epsilon(1e-12));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi));
}

TEST_CASE("infinite total intrinsic curvature: partial integrals grow like e^rho") {
  std::vector<double> r{10.0, 15.0, 20.0};
  std::vector<double> v;
  for (double x : r) v.push_back(intrinsic_curvature_partial(1.0, x).value);
  CHECK(fit_exponential_rate(r, v) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("catenaries meet once above the waist") {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.5, 1.0}, {1.0, 3.0}, {0.3, 0.31}}) {
    const IntersectionResult r = intersect_catenaries(2, a, b);
    CHECK(r.count == 1);
    CHECK(r.t_star > 0.0);
    CHECK(lambda(2, a, r.rho_star) == doctest::Approx(lambda(2, b, r.rho_star)).epsilon(1e-9));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(Catenoid(1, 1.0), DomainError);
  CHECK_THROWS_AS(Catenoid(2, 0.0), DomainError);
  CHECK_THROWS_AS(Catenoid(2, -1.0), DomainError);
  CHECK_THROWS_AS(Catenoid(2, 1.0).lambda(0.5), DomainError);
}

TEST_CASE("sign of lambda(a, .) - lambda(b, .) around the intersection") {
  const double a = 0.5, b = 1.0;
  // Just past rho = b the wider catenary is still near its waist.
  CHECK(lambda(2, a, b + 1e-3) - lambda(2, b, b + 1e-3) > 0.0);
  CHECK(lambda(2, a, 30.0) - lambda(2, b, 30.0) < 0.0);
  CHECK_THROWS(intersect_catenaries(2, 1.0, 1.0));
}
