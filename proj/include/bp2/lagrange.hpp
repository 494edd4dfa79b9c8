#pragma once

// Supporting-hyperplane certificates for the sender's problem at a fixed
// effort. A posterior distribution tau is optimal when there are multipliers
// (psi, phi, rho) with
//
//   L(mu) = v_S(mu) + psi f(mu) - phi mu <= rho   for all mu in [0,1],
//
// and equality on the support of tau. In the binary model phi is a scalar;
// the second component of the general vector is absorbed into rho.

#include <cstddef>
#include <functional>
#include <optional>

#include "bp2/game_core.hpp"

namespace bp2 {

struct MultiplierSet {
  double psi = 0.0;  // incentive-compatibility constraint
  double phi = 0.0;  // plausibility constraint
  double rho = 0.0;  // hyperplane level
};

/// v_S(mu) + psi f(mu) - phi mu.
double lagrangian(Belief mu, const MultiplierSet& m, double effort,
                  const CostFunction& cost);

/// d^2 L / d mu^2 = 4 + 2 psi / (lambda (1 - lambda)).
double lagrangian_curvature(double psi, double effort);

/// Default number of points in the verification grid over [0,1].
inline constexpr std::size_t kMultiplierGrid = 10000;

/// Searches psi from 0 down to -2 lambda (1 - lambda) in steps of 1e-3 (the
/// lower endpoint included). For each psi, phi and rho are pinned by equality
/// of L at the smallest and largest support beliefs, or by tangency when tau
/// has a single atom. The first psi whose Lagrangian stays below rho (within
/// 1e-9) on a `grid`-point mesh and at its analytic vertex, and touches rho
/// at every support point, is returned.
///
/// Returns nullopt when no psi in the window certifies tau. Throws
/// ConstraintViolation when tau is not plausible or not incentive compatible
/// at `effort` (tolerance 1e-9).
std::optional<MultiplierSet> find_multipliers(const PosteriorDistribution& tau,
                                              double effort,
                                              const CostFunction& cost,
                                              std::size_t grid = kMultiplierGrid);

/// max over the mesh and the vertex of L(mu) - rho.
double hyperplane_violation(const MultiplierSet& m, double effort,
                            const CostFunction& cost,
                            std::size_t grid = kMultiplierGrid);

struct GCheck {
  double closed_form;
  double numeric;
};

/// IC integrand signature, injectable for mutation testing.
using IcIntegrand =
    std::function<double(Belief, double, const CostFunction&)>;

/// g(lambda) two ways: 1 - c'(lambda), and E[f] under the fully informative
/// posterior. Requires effort in (0, lambda_bar].
GCheck g_check(double effort, const CostFunction& cost);
GCheck g_check(double effort, const CostFunction& cost,
               const IcIntegrand& integrand);

}  // namespace bp2
