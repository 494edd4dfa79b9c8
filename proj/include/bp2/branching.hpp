#pragma once

// Two-type wake-up branching process for comment cascades.
//
// X counts individuals holding a negative comment, Y those holding a positive
// one. At each wake event one individual is chosen uniformly (x-type with
// probability X/Z), leaves the pool, comments negatively with probability
// alpha_xx (x-type) or alpha_yx (y-type), and shares the post with
// xi ~ Bin(N, q) friends, all of whom inherit the new comment's type.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bp2/game_core.hpp"
#include "bp2/rng.hpp"

namespace bp2 {

enum class OffspringModel { fixed_n, poisson_n };

struct BranchingConfig {
  std::uint64_t x0 = 50;
  std::uint64_t y0 = 50;
  /// E[N]; must be a positive integer under fixed_n.
  double mean_friends = 50.0;
  double share_prob = 0.5;
  OffspringModel offspring_model = OffspringModel::fixed_n;
  std::uint64_t n_events = 1500;
  std::uint64_t seed = 1;

  /// Mean offspring per wake event, m = E[N] q.
  double mean_offspring() const noexcept { return mean_friends * share_prob; }
  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

struct BranchingState {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t n = 0;

  std::uint64_t z() const noexcept { return x + y; }
  /// Share of negative comments; only meaningful when z() > 0.
  double eta() const noexcept {
    return static_cast<double>(x) / static_cast<double>(z());
  }
};

struct TrajectoryPoint {
  std::uint64_t n;
  std::uint64_t x;
  std::uint64_t y;
  double eta;
  /// Z_n / n, with n = 0 read as 1 so the first point holds Z_0.
  double z_bar;
  double x_bar;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  bool extinct = false;
};

/// Probability of a negative comment under belief mu: 1 - a*(mu).
double alpha_from_belief(Belief mu) noexcept;

/// Limiting share of negative comments alpha_yx / (1 - alpha_xx + alpha_yx).
/// Throws DegenerateDenominator for (1, 0).
double eta_star(double alpha_xx, double alpha_yx);

/// One wake event. Throws ExtinctProcess when z = 0.
BranchingState step(const BranchingState& state, double alpha_xx,
                    double alpha_yx, const BranchingConfig& config, Rng& rng);

/// Runs up to config.n_events wake events from (x0, y0), stopping early on
/// extinction. The point where z reaches 0 keeps the previous eta. Output
/// depends only on (config, alpha_xx, alpha_yx).
Trajectory simulate(const BranchingConfig& config, double alpha_xx,
                    double alpha_yx);

struct OdePoint {
  double t;
  double z;
  double x;
  double eta;
};

/// Fixed-step RK4 integration of the mean-field system
///   z' = (m - 1 - z) 1{z>0}
///   x' = [eta (alpha_xx m - 1) + (1 - eta) alpha_yx m - x] 1{z>0}, eta = x/z.
/// Samples every `sample_every` steps plus the final state. Throws
/// DegenerateDenominator when z0 <= 0 and InvalidArgument on bad dt/horizon.
std::vector<OdePoint> ode_integrate(double m, double alpha_xx, double alpha_yx,
                                    double z0, double x0, double horizon = 50.0,
                                    double dt = 1e-3,
                                    std::size_t sample_every = 1);

struct FixedPoint {
  double z_star;
  double x_star;
};

/// (m - 1, eta_star (m - 1)); throws Subcritical when m <= 1.
FixedPoint fixed_point(double m, double alpha_xx, double alpha_yx);

}  // namespace bp2
