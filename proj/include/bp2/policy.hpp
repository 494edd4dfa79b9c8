#pragma once

// Named tagging policies, the implementable-effort bound, the agent's
// equilibrium effort under a fixed policy, and the sender's optimum computed
// by enumerating three-point posterior distributions on a belief grid.

#include <cstddef>

#include "bp2/game_core.hpp"

namespace bp2 {

/// Sender-optimal (effort, posterior) pair with its constraint residuals.
struct EquilibriumReport {
  double lambda_star = 0.0;
  PosteriorDistribution tau_star{{{0.0, 1.0}}};
  double sender_value = 0.0;
  /// E_tau[f(mu)] at lambda_star.
  double ic_residual = 0.0;
  /// |E_tau[mu] - lambda_star|.
  double plausibility_gap = 0.0;
  std::size_t oracle_grid_size = 0;
  std::size_t lambda_grid_size = 0;
  double lambda_bar = 0.0;
};

/// Largest implementable effort: the root of c'(lambda) = 1, by bisection.
double lambda_bar(const CostFunction& cost);

/// Three-point distribution on {0, effort, 1} that is Bayes plausible and
/// incentive compatible:
///   tau(0) = (1 - l) c'(l),  tau(l) = 1 - c'(l),  tau(1) = l c'(l).
/// The middle atom is dropped when its weight falls below 1e-12.
/// Its sender value is (1 - c'(l))(2 l^2 - l) + l c'(l), which reaches l only
/// at l = lambda_bar, where the distribution is fully informative.
/// Throws InfeasibleEffort when effort exceeds lambda_bar(cost).
PosteriorDistribution hybrid_tagging(double effort, const CostFunction& cost);

/// Support {0, 1} with weights {1 - effort, effort}.
PosteriorDistribution fully_informative(double effort);

/// The prior itself: a single atom at effort.
PosteriorDistribution uninformative(double effort);

/// Effort the agent exerts in equilibrium when facing `pi`.
///
/// Beliefs are recomputed from (pi, lambda) at every candidate, so a
/// candidate is a fixed point of the agent's first-order condition
///   h(lambda) = vbar_A(1) - vbar_A(0) - c'(lambda) = 0.
/// Roots are bracketed on a 1e-4 grid and refined by bisection to 1e-10;
/// lambda = 0 is a candidate when h(0) <= 0 and a fallback when no root
/// exists. Among candidates the sender's expected utility decides, ties
/// going to the lower effort.
double agent_best_effort(const SignalingPolicy& pi, const CostFunction& cost);

/// Agent's marginal reputation gain vbar_A(1) - vbar_A(0) under `pi` with
/// beliefs consistent with `effort`.
double reputation_gain(const SignalingPolicy& pi, double effort);

/// Sender's value at a fixed effort, found by brute force.
///
/// Beliefs are discretized to `grid_size` uniform points on [0,1] plus
/// {0, effort, 1}. Every triple of beliefs is tried: the 3x3 system
/// {sum w = 1, E[mu] = effort, E[f] = 0} is solved and nonnegative solutions
/// are kept. Returns the best one. Requires effort in (0, lambda_bar] and
/// grid_size >= 11; throws Infeasible if no triple admits a solution.
PosteriorDistribution optimize_tau_given_lambda(double effort,
                                                const CostFunction& cost,
                                                std::size_t grid_size);

/// Sweeps effort over lambda_bar * i / lambda_grid, i = 1..lambda_grid, and
/// keeps the best optimize_tau_given_lambda result (lowest effort on ties).
/// Throws ConvergenceFailure if the winner is not within one grid step of
/// lambda_bar with a fully informative posterior.
EquilibriumReport sender_optimal_equilibrium(const CostFunction& cost,
                                             std::size_t lambda_grid,
                                             std::size_t belief_grid);

/// Expected limiting share of negative comments, E_tau[1 - mu].
double equilibrium_trend(const PosteriorDistribution& tau) noexcept;

}  // namespace bp2
