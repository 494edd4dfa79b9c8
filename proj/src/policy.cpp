#include "bp2/policy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "bp2/errors.hpp"
#include "bp2/parallel.hpp"

namespace bp2 {

namespace {

// Slack allowed when comparing a requested effort against lambda_bar, which is
// itself only known to bisection precision.
constexpr double kEffortSlack = 1e-12;
constexpr double kWeightDrop = 1e-12;
constexpr double kValueTie = 1e-12;
constexpr double kConstraintTolerance = 1e-9;

void require_feasible(double effort, const CostFunction& cost, const char* op) {
  if (!(effort >= 0.0 && effort <= 1.0)) {
    std::ostringstream msg;
    msg << op << ": effort must lie in [0,1], got " << effort;
    throw InvalidArgument(msg.str());
  }
  const double bound = lambda_bar(cost);
  if (effort > bound + kEffortSlack) {
    std::ostringstream msg;
    msg.precision(12);
    msg << op << ": effort " << effort
        << " exceeds the implementable bound lambda_bar = " << bound;
    throw InfeasibleEffort(msg.str());
  }
}

double det3(const std::array<double, 3>& a, const std::array<double, 3>& b,
            const std::array<double, 3>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) -
         b[0] * (a[1] * c[2] - a[2] * c[1]) +
         c[0] * (a[1] * b[2] - a[2] * b[1]);
}

}  // namespace

double lambda_bar(const CostFunction& cost) {
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cost.gradient(mid) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(cost.gradient(lo) - 1.0) <= std::abs(cost.gradient(hi) - 1.0)
             ? lo
             : hi;
}

PosteriorDistribution hybrid_tagging(double effort, const CostFunction& cost) {
  require_feasible(effort, cost, "hybrid_tagging");
  // Delta p = p1 - p0 = 1 in the binary model.
  const double marginal = std::min(cost.gradient(effort), 1.0);
  std::vector<Atom> atoms;
  atoms.push_back({0.0, (1.0 - effort) * marginal});
  if (1.0 - marginal >= kWeightDrop) atoms.push_back({effort, 1.0 - marginal});
  atoms.push_back({1.0, effort * marginal});
  std::erase_if(atoms, [](const Atom& a) { return a.weight <= 0.0; });
  return PosteriorDistribution::merged(std::move(atoms), 0.0);
}

PosteriorDistribution fully_informative(double effort) {
  const Prior prior(effort);
  std::vector<Atom> atoms;
  if (prior.probability(State::fake) > 0.0) {
    atoms.push_back({0.0, prior.probability(State::fake)});
  }
  if (prior.probability(State::accurate) > 0.0) {
    atoms.push_back({1.0, prior.probability(State::accurate)});
  }
  return PosteriorDistribution(std::move(atoms));
}

PosteriorDistribution uninformative(double effort) {
  const Prior prior(effort);
  return PosteriorDistribution({{prior.effort(), 1.0}});
}

double reputation_gain(const SignalingPolicy& pi, double effort) {
  double gain = 0.0;
  for (std::size_t s = 0; s < pi.tags(); ++s) {
    const double diff = pi(State::accurate, s) - pi(State::fake, s);
    if (diff != 0.0) gain += diff * tag_belief(pi, s, effort);
  }
  return gain;
}

double agent_best_effort(const SignalingPolicy& pi, const CostFunction& cost) {
  constexpr int kGrid = 10000;
  constexpr double kRefine = 1e-10;
  auto h = [&](double effort) {
    return reputation_gain(pi, effort) - cost.gradient(effort);
  };

  std::vector<double> candidates;
  double prev = h(0.0);
  if (prev <= 0.0) candidates.push_back(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double x = static_cast<double>(i) / kGrid;
    const double cur = h(x);
    if (cur == 0.0) {
      candidates.push_back(x);
    } else if (prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
      double lo = static_cast<double>(i - 1) / kGrid;
      double hi = x;
      const bool rising = prev < 0.0;
      while (hi - lo > kRefine) {
        const double mid = 0.5 * (lo + hi);
        if ((h(mid) < 0.0) == rising) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      candidates.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  if (candidates.empty()) candidates.push_back(0.0);

  // Multiple fixed points are all equilibria; the sender picks.
  double best = candidates.front();
  double best_value = expected_sender_value(posterior_from_policy(pi, best));
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double v = expected_sender_value(posterior_from_policy(pi, candidates[i]));
    if (v > best_value + kValueTie) {
      best = candidates[i];
      best_value = v;
    }
  }
  return best;
}

PosteriorDistribution optimize_tau_given_lambda(double effort,
                                                const CostFunction& cost,
                                                std::size_t grid_size) {
  if (grid_size < 11) {
    throw InvalidArgument("optimize_tau_given_lambda: grid_size must be >= 11");
  }
  if (!(effort > 0.0)) {
    throw DegeneratePrior("optimize_tau_given_lambda: effort must be positive");
  }
  require_feasible(effort, cost, "optimize_tau_given_lambda");

  std::vector<double> mu;
  mu.reserve(grid_size + 1);
  for (std::size_t i = 0; i < grid_size; ++i) {
    mu.push_back(static_cast<double>(i) / static_cast<double>(grid_size - 1));
  }
  mu.push_back(effort);
  std::sort(mu.begin(), mu.end());
  mu.erase(std::unique(mu.begin(), mu.end(),
                       [](double a, double b) {
                         return b - a <= kBeliefTolerance;
                       }),
           mu.end());

  const double scale = 1.0 / (effort * (1.0 - effort));
  const double marginal_cost = cost.gradient(effort);
  const std::size_t n = mu.size();
  std::vector<std::array<double, 3>> col(n);
  std::vector<double> value(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = mu[i] * (mu[i] - effort) * scale - marginal_cost;
    col[i] = {1.0, mu[i], f};
    value[i] = 2.0 * mu[i] * mu[i] - mu[i];
  }
  const std::array<double, 3> rhs{1.0, effort, 0.0};

  // A plausible support must straddle the prior.
  const auto split = static_cast<std::size_t>(
      std::upper_bound(mu.begin(), mu.end(), effort) - mu.begin());

  double best_value = -std::numeric_limits<double>::infinity();
  std::array<std::size_t, 3> best_idx{};
  std::array<double, 3> best_w{};
  bool found = false;

  for (std::size_t i = 0; i < split; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t l = std::max(j + 1, split - 1); l < n; ++l) {
        const double d = det3(col[i], col[j], col[l]);
        if (d == 0.0) continue;
        const std::array<double, 3> w{det3(rhs, col[j], col[l]) / d,
                                      det3(col[i], rhs, col[l]) / d,
                                      det3(col[i], col[j], rhs) / d};
        if (w[0] < -kWeightDrop || w[1] < -kWeightDrop || w[2] < -kWeightDrop) {
          continue;
        }
        const double v = w[0] * value[i] + w[1] * value[j] + w[2] * value[l];
        if (v > best_value + kValueTie) {
          best_value = v;
          best_idx = {i, j, l};
          best_w = w;
          found = true;
        }
      }
    }
  }
  if (!found) {
    std::ostringstream msg;
    msg << "optimize_tau_given_lambda: no feasible posterior at effort "
        << effort;
    throw Infeasible(msg.str());
  }

  std::vector<Atom> atoms;
  for (int t = 0; t < 3; ++t) {
    atoms.push_back({mu[best_idx[t]], std::max(best_w[t], 0.0)});
  }
  PosteriorDistribution tau = PosteriorDistribution::merged(atoms, kWeightDrop);
  const double gap = std::abs(expected_belief(tau) - effort);
  const double ic = std::abs(expected_ic_residual(tau, effort, cost));
  if (gap > kConstraintTolerance || ic > kConstraintTolerance) {
    std::ostringstream msg;
    msg << "optimize_tau_given_lambda: constraint residuals " << gap << ", "
        << ic << " exceed " << kConstraintTolerance;
    throw ConvergenceFailure(msg.str());
  }
  return tau;
}

EquilibriumReport sender_optimal_equilibrium(const CostFunction& cost,
                                             std::size_t lambda_grid,
                                             std::size_t belief_grid) {
  if (lambda_grid < 11 || belief_grid < 11) {
    throw InvalidArgument("sender_optimal_equilibrium: grids must be >= 11");
  }
  const double bound = lambda_bar(cost);
  const double step = bound / static_cast<double>(lambda_grid);

  std::vector<std::optional<PosteriorDistribution>> taus(lambda_grid);
  std::vector<double> values(lambda_grid);
  auto effort_at = [&](std::size_t i) {
    return i + 1 == lambda_grid
               ? bound
               : bound * static_cast<double>(i + 1) /
                     static_cast<double>(lambda_grid);
  };
  parallel_for(lambda_grid, [&](std::size_t i) {
    taus[i] = optimize_tau_given_lambda(effort_at(i), cost, belief_grid);
    values[i] = expected_sender_value(*taus[i]);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < lambda_grid; ++i) {
    if (values[i] > values[best] + kValueTie) best = i;
  }

  EquilibriumReport report;
  report.lambda_star = effort_at(best);
  report.tau_star = *taus[best];
  report.sender_value = values[best];
  report.ic_residual =
      expected_ic_residual(report.tau_star, report.lambda_star, cost);
  report.plausibility_gap =
      std::abs(expected_belief(report.tau_star) - report.lambda_star);
  report.oracle_grid_size = belief_grid;
  report.lambda_grid_size = lambda_grid;
  report.lambda_bar = bound;

  if (std::abs(report.lambda_star - bound) > step * (1.0 + 1e-9) ||
      report.tau_star.interior_mass() > kConstraintTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "sender_optimal_equilibrium: optimum at effort "
        << report.lambda_star << " with interior mass "
        << report.tau_star.interior_mass()
        << " is not the fully informative policy at lambda_bar = " << bound;
    throw ConvergenceFailure(msg.str());
  }
  return report;
}

double equilibrium_trend(const PosteriorDistribution& tau) noexcept {
  double e = 0.0;
  for (const Atom& a : tau.atoms()) e += a.weight * (1.0 - a.belief);
  return e;
}

}  // namespace bp2
