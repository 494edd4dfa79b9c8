#pragma once

// Persuasion-game primitives for the binary-state model: beliefs, priors,
// utilities, best responses, the incentive-compatibility integrand, and the
// conversions between tagging policies and distributions over posteriors.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace bp2 {

/// Absolute tolerance under which two beliefs are the same support point.
inline constexpr double kBeliefTolerance = 1e-12;
/// Tolerance on the total mass of a posterior distribution.
inline constexpr double kWeightSumTolerance = 1e-12;
/// Default tolerance for Bayes plausibility checks.
inline constexpr double kPlausibilityTolerance = 1e-9;

/// Content accuracy. `fake` is misinformation.
enum class State : int { fake = 0, accurate = 1 };

/// Probability mass the receiver puts on `State::accurate`.
class Belief {
 public:
  explicit Belief(double mu);
  double mu() const noexcept { return mu_; }

 private:
  double mu_;
};

/// Prior p(lambda) = (1 - lambda, lambda) over {fake, accurate} induced by the
/// agent's effort.
class Prior {
 public:
  explicit Prior(double effort);
  double effort() const noexcept { return effort_; }
  double probability(State omega) const noexcept {
    return omega == State::accurate ? effort_ : 1.0 - effort_;
  }
  /// True at effort 0 or 1, where one state has no prior mass.
  bool degenerate() const noexcept { return effort_ == 0.0 || effort_ == 1.0; }

 private:
  double effort_;
};

/// Agent effort cost c with its first and second derivatives.
///
/// Construction validates c(0) = 0, c'(0) = 0, c'(1) > 1, c' strictly
/// increasing on a 1e-3 grid, and c'' > 0 on the interior of that grid.
class CostFunction {
 public:
  using Fn = std::function<double(double)>;

  CostFunction(Fn value, Fn gradient, Fn hessian);

  /// c(lambda) = k lambda^2; requires k > 1/2 so that c'(1) = 2k > 1.
  static CostFunction quadratic(double k);

  double operator()(double effort) const { return value_(effort); }
  double gradient(double effort) const { return gradient_(effort); }
  double hessian(double effort) const { return hessian_(effort); }

 private:
  Fn value_;
  Fn gradient_;
  Fn hessian_;
};

/// Tagging policy pi(s | omega) over a finite tag alphabet.
class SignalingPolicy {
 public:
  /// rows[omega][s]; both rows must have the same length >= 1, entries in
  /// [0,1], and each row must sum to 1 within 1e-9.
  explicit SignalingPolicy(std::array<std::vector<double>, 2> rows);

  /// Tag equals state.
  static SignalingPolicy identity();
  /// Every tag equally likely regardless of state.
  static SignalingPolicy uniform(std::size_t tags = 2);

  std::size_t tags() const noexcept { return rows_[0].size(); }
  double operator()(State omega, std::size_t tag) const {
    return rows_[static_cast<int>(omega)][tag];
  }
  const std::vector<double>& row(State omega) const noexcept {
    return rows_[static_cast<int>(omega)];
  }

 private:
  std::array<std::vector<double>, 2> rows_;
};

/// One support point of a posterior distribution.
struct Atom {
  double belief;
  double weight;
};

/// Finite distribution over posterior beliefs. Atoms are kept sorted by
/// belief; weights are nonnegative and sum to 1; beliefs are pairwise
/// distinct (beyond kBeliefTolerance).
class PosteriorDistribution {
 public:
  explicit PosteriorDistribution(std::vector<Atom> atoms);

  /// Merges atoms closer than kBeliefTolerance, drops atoms whose weight is
  /// below `drop_below`, and renormalizes the remaining mass.
  static PosteriorDistribution merged(std::vector<Atom> atoms,
                                      double drop_below = kWeightSumTolerance);

  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }

  /// Weight on the atom at `belief`, or 0 if there is none.
  double weight_at(double belief) const noexcept;
  /// Total weight on beliefs strictly inside (0,1).
  double interior_mass() const noexcept;

 private:
  std::vector<Atom> atoms_;
};

// ---------------------------------------------------------------------------
// Utilities and best responses

/// Receiver's optimal comment positivity a*(mu) = E_mu[omega].
double best_response(Belief mu) noexcept;

/// u_R(omega, a) = -(a - omega)^2.
double receiver_utility(State omega, double action);

/// Sender's ex-post value under a stabilized cascade, 2 mu^2 - mu.
double sender_value(Belief mu) noexcept;

/// Agent reputation 1 - eta*(a*(mu)) = mu.
double agent_value(Belief mu) noexcept;

/// IC integrand f(mu) = mu (mu - lambda) / (lambda (1 - lambda)) - c'(lambda).
/// Throws DegeneratePrior when effort is 0 or 1.
double ic_integrand(Belief mu, double effort, const CostFunction& cost);

// ---------------------------------------------------------------------------
// Policies and posteriors

/// Probability that `tag` is emitted under prior p(effort).
double tag_marginal(const SignalingPolicy& pi, std::size_t tag, double effort);

/// Posterior after observing `tag`. For tags with zero marginal the belief is
/// extended off path by Bayes rule under a uniform prior, which is the limit
/// of on-path beliefs as effort approaches the degenerate endpoint.
double tag_belief(const SignalingPolicy& pi, std::size_t tag, double effort);

/// Distribution over posteriors induced by `pi` under prior p(effort).
/// Zero-probability tags are dropped; tags with equal beliefs are merged.
PosteriorDistribution posterior_from_policy(const SignalingPolicy& pi,
                                            double effort);

/// One tag per support point, pi(s | omega) = tau(mu_s) mu_s(omega) / p(omega).
/// Throws NotPlausible if E_tau[mu] differs from effort by more than 1e-9, and
/// DegeneratePrior if a support belief puts mass on a state with zero prior.
SignalingPolicy policy_from_posterior(const PosteriorDistribution& tau,
                                      double effort);

/// E_tau[mu].
double expected_belief(const PosteriorDistribution& tau) noexcept;
/// E_tau[v_S(mu)].
double expected_sender_value(const PosteriorDistribution& tau) noexcept;
/// E_tau[f(mu)]; zero exactly when tau is incentive compatible for effort.
double expected_ic_residual(const PosteriorDistribution& tau, double effort,
                            const CostFunction& cost);
/// |E_tau[mu] - effort| <= tol.
bool check_bayes_plausible(const PosteriorDistribution& tau, double effort,
                           double tol = kPlausibilityTolerance) noexcept;

}  // namespace bp2
