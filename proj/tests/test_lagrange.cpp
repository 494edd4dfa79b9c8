#include <doctest.h>

#include <cmath>

#include "bp2/errors.hpp"
#include "bp2/lagrange.hpp"
#include "bp2/policy.hpp"

using namespace bp2;

TEST_CASE("lagrangian values") {
  const auto c = CostFunction::quadratic(1.0);
  // psi = -2 l(1-l) zeroes the quadratic term; at l = 1/2 the linear term
  // vanishes too and L is constant.
  const MultiplierSet m{-0.5, 0.0, 0.5};
  for (double mu : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    CHECK(lagrangian(Belief(mu), m, 0.5, c) == doctest::Approx(0.5).epsilon(1e-14));
  }
  const MultiplierSet zero{};
  for (double mu : {0.0, 0.25, 1.0}) {
    CHECK(lagrangian(Belief(mu), zero, 0.3, c) == doctest::Approx(sender_value(Belief(mu))));
  }
}

TEST_CASE("lagrangian curvature") {
  CHECK(lagrangian_curvature(0.0, 0.5) == 4.0);
  CHECK(lagrangian_curvature(-0.5, 0.5) == doctest::Approx(0.0));
  CHECK(lagrangian_curvature(-1.0, 0.5) == doctest::Approx(-4.0));
  CHECK_THROWS_AS(lagrangian_curvature(0.0, 0.0), DegeneratePrior);
  CHECK_THROWS_AS(lagrangian_curvature(0.0, 1.0), DegeneratePrior);
  // Finite-difference oracle.
  const auto c = CostFunction::quadratic(2.0);
  const MultiplierSet m{-0.13, 0.2, 0.0};
  const double h = 1e-4, mu = 0.4, l = 0.2;
  const double fd = (lagrangian(Belief(mu + h), m, l, c) - 2 * lagrangian(Belief(mu), m, l, c) +
                     lagrangian(Belief(mu - h), m, l, c)) /
                    (h * h);
  CHECK(fd == doctest::Approx(lagrangian_curvature(m.psi, l)).epsilon(1e-5));
}

TEST_CASE("multipliers for the fully informative optimum") {
  const auto c = CostFunction::quadratic(1.0);
  const auto m = find_multipliers(fully_informative(0.5), 0.5, c);
  REQUIRE(m.has_value());
  CHECK(m->psi == doctest::Approx(0.0));
  CHECK(m->phi == doctest::Approx(1.0));
  CHECK(m->rho == doctest::Approx(0.0));
  CHECK(hyperplane_violation(*m, 0.5, c) <= 1e-9);
}

TEST_CASE("multipliers at lambda_bar across k") {
  for (double k : {0.6, 0.8, 1.0, 2.0, 5.0}) {
    const auto c = CostFunction::quadratic(k);
    const double lb = lambda_bar(c);
    const auto tau = fully_informative(lb);
    const auto m = find_multipliers(tau, lb, c);
    REQUIRE(m.has_value());
    CHECK(m->psi <= 0.0);
    CHECK(lagrangian_curvature(m->psi, lb) >= -1e-9);
    CHECK(hyperplane_violation(*m, lb, c) <= 1e-9);
    for (const Atom& a : tau.atoms()) {
      CHECK(std::abs(lagrangian(Belief(a.belief), *m, lb, c) - m->rho) <= 1e-9);
    }
  }
}

TEST_CASE("hybrid tagging is certified below lambda_bar") {
  for (double k : {0.6, 1.0, 3.0}) {
    const auto c = CostFunction::quadratic(k);
    const double lb = lambda_bar(c);
    for (double frac : {0.25, 0.5, 0.9}) {
      const double l = frac * lb;
      const auto tau = hybrid_tagging(l, c);
      const auto m = find_multipliers(tau, l, c);
      REQUIRE(m.has_value());
      // The three-point support needs a flat Lagrangian.
      CHECK(m->psi == doctest::Approx(-2.0 * l * (1.0 - l)).epsilon(1e-12));
      CHECK(std::abs(lagrangian_curvature(m->psi, l)) <= 1e-9);
      CHECK(hyperplane_violation(*m, l, c) <= 1e-9);
    }
  }
}

TEST_CASE("non-optimal posteriors are rejected") {
  const auto c = CostFunction::quadratic(1.0);
  // Fails plausibility.
  CHECK_THROWS_AS(find_multipliers(fully_informative(0.4), 0.5, c), ConstraintViolation);
  // Plausible but not incentive compatible.
  CHECK_THROWS_AS(find_multipliers(fully_informative(0.3), 0.3, c), ConstraintViolation);
  CHECK_THROWS_AS(find_multipliers(uninformative(0.3), 0.3, c), ConstraintViolation);
}

TEST_CASE("g check") {
  const auto c = CostFunction::quadratic(1.0);
  const GCheck g = g_check(0.25, c);
  CHECK(g.closed_form == doctest::Approx(0.5));
  CHECK(std::abs(g.numeric - g.closed_form) <= 1e-12);
  for (int i = 1; i <= 50; ++i) {
    const double l = 0.5 * i / 50.0;
    const GCheck gi = g_check(l, c);
    CHECK(std::abs(gi.numeric - gi.closed_form) <= 1e-12);
  }
  CHECK_THROWS_AS(g_check(0.0, c), DegeneratePrior);
  CHECK_THROWS_AS(g_check(0.6, c), InfeasibleEffort);

  const IcIntegrand flipped = [](Belief mu, double l, const CostFunction& cf) {
    return -ic_integrand(mu, l, cf);
  };
  const GCheck bad = g_check(0.25, c, flipped);
  CHECK(std::abs(bad.numeric - bad.closed_form) > 0.1);
}
