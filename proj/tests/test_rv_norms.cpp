#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "maxineq/rv_norms.hpp"
#include "test_support.hpp"

using namespace maxineq;

namespace {
constexpr double kInfD = std::numeric_limits<double>::infinity();
}

TEST_CASE("construction and centering") {
  EmpiricalRV rv({{1.0, 0.5}, {3.0, 0.5}});
  CHECK(rv.mean() == doctest::Approx(2.0));
  EmpiricalRV c = center(rv);
  CHECK(c.centered());
  CHECK(c.atoms()[0].value == doctest::Approx(-1.0));
  CHECK(c.atoms()[1].value == doctest::Approx(1.0));
  CHECK(std::abs(c.mean()) <= 1e-12);
  // idempotent
  EmpiricalRV cc = center(c);
  CHECK(cc.atoms()[0].value == doctest::Approx(c.atoms()[0].value));

  EmpiricalRV constant({{5.0, 1.0}});
  CHECK(center(constant).atoms()[0].value == doctest::Approx(0.0));

  CHECK_THROWS_AS(EmpiricalRV({}), std::domain_error);
  CHECK_THROWS_AS(EmpiricalRV({{1.0, 0.4}, {2.0, 0.4}}), std::domain_error);
  CHECK_THROWS_AS(EmpiricalRV({{1.0, -0.5}, {2.0, 1.5}}), std::domain_error);
}

TEST_CASE("beta norms") {
  EmpiricalRV rademacher({{-1.0, 0.5}, {1.0, 0.5}});
  CHECK(beta_norm(rademacher, 2.0) == doctest::Approx(1.0));
  CHECK(beta_norm(rademacher, kInfD) == doctest::Approx(1.0));
  EmpiricalRV half({{0.0, 0.5}, {2.0, 0.5}});
  CHECK(beta_norm(half, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(beta_norm(half, 0.5), std::domain_error);
}

TEST_CASE("luxemburg norm") {
  auto p2 = OrliczSpec::power(2.0);
  EmpiricalRV rademacher({{-1.0, 0.5}, {1.0, 0.5}});
  CHECK(luxemburg_norm(rademacher, p2) == doctest::Approx(1.0).epsilon(1e-9));
  // all atoms at |v| = c: the norm is c for any power
  EmpiricalRV c3({{-3.0, 0.25}, {3.0, 0.75}});
  CHECK(luxemburg_norm(c3, OrliczSpec::power(1.7)) == doctest::Approx(3.0).epsilon(1e-9));
  // solve 0.5 (2/sigma)^2 = 1 -> sigma = sqrt(2)
  EmpiricalRV half({{0.0, 0.5}, {2.0, 0.5}});
  CHECK(luxemburg_norm(half, p2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  EmpiricalRV zero({{0.0, 1.0}});
  CHECK(luxemburg_norm(zero, p2) == 0.0);
  // for power specs the Luxemburg norm is exactly the p-norm
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    EmpiricalRV rv = testing::random_rv(rng);
    for (double p : {1.0, 1.5, 2.0, 3.0})
      CHECK(luxemburg_norm(rv, OrliczSpec::power(p)) ==
            doctest::Approx(beta_norm(rv, p)).epsilon(1e-8));
  }
}

TEST_CASE("amemiya norm: conjugate-of-power equals the q-norm") {
  auto psi_star_p2 = conjugate_fn(OrliczSpec::power(2.0));
  EmpiricalRV rademacher({{-1.0, 0.5}, {1.0, 0.5}});
  CHECK(amemiya_norm(rademacher, psi_star_p2) == doctest::Approx(1.0).epsilon(1e-7));
  EmpiricalRV half({{0.0, 0.5}, {2.0, 0.5}});
  CHECK(amemiya_norm(half, psi_star_p2) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-7));
  EmpiricalRV zero({{0.0, 1.0}});
  CHECK(amemiya_norm(zero, psi_star_p2) == 0.0);

  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    EmpiricalRV rv = testing::random_rv(rng);
    for (double p : {3.0, 2.0, 1.5}) {
      double q = p / (p - 1.0);
      double am = amemiya_norm(rv, conjugate_fn(OrliczSpec::power(p)));
      CHECK(am == doctest::Approx(beta_norm(rv, q)).epsilon(1e-7));
    }
  }
}

TEST_CASE("amemiya norm under the indicator conjugate is the sup norm") {
  // p = 1: psi* is 0 on [0,1] and inf above, so the norm is ess sup
  auto psi_star_p1 = conjugate_fn(OrliczSpec::power(1.0));
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    EmpiricalRV rv = testing::random_rv(rng);
    CHECK(amemiya_norm(rv, psi_star_p1) ==
          doctest::Approx(beta_norm(rv, kInfD)).epsilon(1e-7));
  }
}

TEST_CASE("homogeneity of both norms") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> us(0.1, 5.0);
  auto spec = OrliczSpec::power(2.0);
  auto psi_star = conjugate_fn(spec);
  for (int k = 0; k < 50; ++k) {
    EmpiricalRV rv = testing::random_rv(rng);
    double s = us(rng);
    std::vector<Atom> scaled = rv.atoms();
    for (auto& a : scaled) a.value *= s;
    EmpiricalRV srv(scaled);
    CHECK(luxemburg_norm(srv, spec) ==
          doctest::Approx(s * luxemburg_norm(rv, spec)).epsilon(1e-9));
    CHECK(amemiya_norm(srv, psi_star) ==
          doctest::Approx(s * amemiya_norm(rv, psi_star)).epsilon(1e-9));
  }
}

TEST_CASE("generalized Holder on independent couplings") {
  std::mt19937_64 rng(19);
  auto spec = OrliczSpec::power(2.0);
  auto psi_star = conjugate_fn(spec);
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    EmpiricalRV x = testing::random_rv(rng);
    EmpiricalRV y = testing::random_rv(rng);
    // independent coupling: E[XY] = sum_{i,j} w_i w_j x_i y_j
    double exy = 0.0;
    for (const auto& ax : x.atoms())
      for (const auto& ay : y.atoms()) exy += ax.weight * ay.weight * ax.value * ay.value;
    double rhs = luxemburg_norm(x, spec) * amemiya_norm(y, psi_star);
    CHECK(exy <= rhs + 1e-9);
    ++checked;
  }
  CHECK(checked == 500);
}
