#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "maxineq/discrete_oracle.hpp"
#include "test_support.hpp"

using namespace maxineq;

namespace {

// Z uniform on {(+1,-1), (-1,+1)} with argmax selection (ties to index 0)
FiniteJointInstance symmetric_two_point() {
  FiniteJointInstance joint;
  joint.n = 2;
  joint.z_support = {{1.0, -1.0}, {-1.0, 1.0}};
  joint.z_probs = {0.5, 0.5};
  joint.kernel = {{1.0, 0.0}, {0.0, 1.0}};
  return joint;
}

}  // namespace

TEST_CASE("exact selected mean") {
  FiniteJointInstance joint = symmetric_two_point();
  CHECK(exact_selected_mean(joint) == doctest::Approx(1.0));

  FiniteJointInstance uni = joint;
  uni.kernel = {{0.5, 0.5}, {0.5, 0.5}};
  CHECK(exact_selected_mean(uni) == doctest::Approx(0.0));

  std::mt19937_64 rng(5);
  FiniteJointInstance det = testing::deterministic_instance(rng, 3, 5, 1);
  CHECK(exact_selected_mean(det) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("selection marginal") {
  FiniteJointInstance joint = symmetric_two_point();
  auto m = selection_marginal(joint);
  CHECK(m.probs()[0] == doctest::Approx(0.5));
  CHECK(m.probs()[1] == doctest::Approx(0.5));

  std::mt19937_64 rng(6);
  FiniteJointInstance det = testing::deterministic_instance(rng, 3, 4, 2);
  auto dm = selection_marginal(det);
  CHECK(dm.deterministic());
  CHECK(dm.probs()[2] == doctest::Approx(1.0));

  FiniteJointInstance ind = joint;
  ind.kernel = {{0.25, 0.75}, {0.25, 0.75}};
  auto im = selection_marginal(ind);
  CHECK(im.probs()[0] == doctest::Approx(0.25));
}

TEST_CASE("conditional probability rv") {
  FiniteJointInstance joint = symmetric_two_point();
  EmpiricalRV rv = conditional_probability_rv(joint, 0);
  REQUIRE(rv.atoms().size() == 2);
  CHECK(rv.atoms()[0].value == doctest::Approx(0.0));
  CHECK(rv.atoms()[0].weight == doctest::Approx(0.5));
  CHECK(rv.atoms()[1].value == doctest::Approx(1.0));

  FiniteJointInstance ind = joint;
  ind.kernel = {{0.25, 0.75}, {0.25, 0.75}};
  CHECK(conditional_probability_rv(ind, 0).atoms().size() == 1);

  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    FiniteJointInstance r = testing::random_instance(rng, 2 + rng() % 2, 2 + rng() % 5);
    auto m = selection_marginal(r);
    for (std::size_t i = 0; i < r.n; ++i) {
      EmpiricalRV c = conditional_probability_rv(r, i);
      for (const auto& a : c.atoms()) {
        CHECK(a.value >= 0.0);
        CHECK(a.value <= 1.0);
      }
      CHECK(c.mean() == doctest::Approx(m.probs()[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("selected mean never exceeds the exact max mean") {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 200; ++k) {
    FiniteJointInstance r = testing::random_instance(rng, 2 + rng() % 3, 2 + rng() % 6);
    CHECK(exact_selected_mean(r) <= exact_max_mean(r) + 1e-12);
  }
}

TEST_CASE("shift invariance of the selected-mean decomposition") {
  // with centered coordinates, E[Z_T] = sum_i E[Z_i (P(T=i|Z) - a_i)] for
  // any constants a_i: the identity the conditional bound exploits
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    FiniteJointInstance joint = testing::random_instance(rng, 2 + rng() % 3, 3 + rng() % 6);
    double target = exact_selected_mean(joint);
    std::vector<double> shifts(joint.n);
    for (auto& a : shifts) a = ua(rng);
    double shifted = 0.0;
    for (std::size_t k = 0; k < joint.states(); ++k)
      for (std::size_t i = 0; i < joint.n; ++i)
        shifted += joint.z_probs[k] * joint.z_support[k][i] *
                   (joint.kernel[k][i] - shifts[i]);
    CHECK(std::abs(shifted - target) <= 1e-10);
  }
}

TEST_CASE("oracle scale caps are enforced") {
  std::mt19937_64 rng(14);
  FiniteJointInstance joint = testing::random_instance(rng, 2, 4);
  auto spec = OrliczSpec::power(2.0);
  CHECK_THROWS(grid_minimize_bound(joint, spec, 1.0, 5000));
  FiniteJointInstance wide = testing::random_instance(rng, 5, 4);
  CHECK_THROWS(grid_minimize_bound(wide, spec, 1.0, 101));
}

TEST_CASE("deterministic instances give a zero grid bound") {
  std::mt19937_64 rng(15);
  auto spec = OrliczSpec::power(2.0);
  for (int k = 0; k < 5; ++k) {
    FiniteJointInstance det = testing::deterministic_instance(rng, 2, 4, k % 2);
    CHECK(grid_minimize_bound(det, spec, 1.0, 101) <= 1e-3);
    CHECK(grid_minimize_bound(selection_marginal(det), spec, 1.0, 101) <= 1e-3);
  }
}

TEST_CASE("marginal grid bound with a forced to 0 recovers the classical value") {
  // scanning only the t-axis of the a = 0 slice reproduces
  // inf_t (n + psi*(t))/t, the classical sigma psi^{-1}(n)
  auto spec = OrliczSpec::power(2.0);
  std::size_t n = 3;
  double best = std::numeric_limits<double>::infinity();
  auto psi_star = conjugate_fn(spec);
  for (int g = 0; g <= 40000; ++g) {
    double t = std::pow(10.0, -6.0 + 12.0 * g / 40000.0);
    best = std::min(best, (static_cast<double>(n) + psi_star(t)) / t);
  }
  CHECK(best == doctest::Approx(generalized_inverse(spec, 3.0)).epsilon(1e-5));
}

TEST_CASE("instance files round-trip") {
  std::mt19937_64 rng(16);
  FiniteJointInstance joint = testing::random_instance(rng, 3, 4);
  std::istringstream in(format_instance(joint));
  FiniteJointInstance back = parse_instance(in);
  CHECK(back.n == joint.n);
  REQUIRE(back.states() == joint.states());
  for (std::size_t k = 0; k < joint.states(); ++k)
    for (std::size_t i = 0; i < joint.n; ++i) {
      CHECK(back.z_support[k][i] == doctest::Approx(joint.z_support[k][i]).epsilon(1e-15));
      CHECK(back.kernel[k][i] == doctest::Approx(joint.kernel[k][i]).epsilon(1e-15));
    }
}

TEST_CASE("instance parser reports line numbers") {
  auto parse_text = [](const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
  };
  // kernel row on line 5 does not sum to 1
  std::string bad =
      "n 2\nm 2\nz 1 -1\nz -1 1\nk 0.9 0.2\nk 0.5 0.5\np 0.5 0.5\n";
  try {
    parse_text(bad);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
  CHECK_THROWS(parse_text("n 2\nm 1\nz 1 2\nk 0.5 0.5\n"));     // missing p
  CHECK_THROWS(parse_text("q 1\n"));                            // unknown tag
  CHECK_THROWS(parse_text("n 2\nm 1\nz 1\np 1\nk 0.5 0.5\n"));  // short z row
}
