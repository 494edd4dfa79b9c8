#include "bp2/branching.hpp"

#include <cmath>
#include <sstream>

#include "bp2/errors.hpp"

namespace bp2 {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << what << " must lie in [0,1], got " << p;
    throw InvalidArgument(msg.str());
  }
}

TrajectoryPoint record(const BranchingState& s, double eta) {
  const double n = s.n == 0 ? 1.0 : static_cast<double>(s.n);
  return {s.n, s.x, s.y, eta, static_cast<double>(s.z()) / n,
          static_cast<double>(s.x) / n};
}

}  // namespace

void BranchingConfig::validate() const {
  if (x0 + y0 < 1) throw InvalidArgument("branching.x0 + branching.y0 must be >= 1");
  if (!(mean_friends > 0.0) || !std::isfinite(mean_friends) ||
      mean_friends > 1e6) {
    throw InvalidArgument("branching.mean_friends must lie in (0, 1e6]");
  }
  if (offspring_model == OffspringModel::fixed_n &&
      mean_friends != std::floor(mean_friends)) {
    throw InvalidArgument(
        "branching.mean_friends must be an integer under offspring_model fixed_n");
  }
  if (!(share_prob >= 0.0 && share_prob <= 1.0)) {
    throw InvalidArgument("branching.share_prob must lie in [0,1]");
  }
}

double alpha_from_belief(Belief mu) noexcept { return 1.0 - best_response(mu); }

double eta_star(double alpha_xx, double alpha_yx) {
  require_probability(alpha_xx, "alpha_xx");
  require_probability(alpha_yx, "alpha_yx");
  const double denom = 1.0 - alpha_xx + alpha_yx;
  if (denom == 0.0) {
    throw DegenerateDenominator(
        "eta_star: alpha_xx = 1 with alpha_yx = 0 has no interior limit");
  }
  return alpha_yx / denom;
}

BranchingState step(const BranchingState& state, double alpha_xx,
                    double alpha_yx, const BranchingConfig& config, Rng& rng) {
  const std::uint64_t z = state.z();
  if (z == 0) throw ExtinctProcess("step: no live individuals (z = 0)");

  const bool x_wakes =
      rng.uniform() * static_cast<double>(z) < static_cast<double>(state.x);
  const bool negative = rng.bernoulli(x_wakes ? alpha_xx : alpha_yx);
  const std::uint64_t friends =
      config.offspring_model == OffspringModel::fixed_n
          ? static_cast<std::uint64_t>(config.mean_friends)
          : rng.poisson(config.mean_friends);
  const std::uint64_t offspring = rng.binomial(friends, config.share_prob);

  BranchingState next = state;
  if (x_wakes) {
    --next.x;
  } else {
    --next.y;
  }
  if (negative) {
    next.x += offspring;
  } else {
    next.y += offspring;
  }
  ++next.n;
  return next;
}

Trajectory simulate(const BranchingConfig& config, double alpha_xx,
                    double alpha_yx) {
  config.validate();
  require_probability(alpha_xx, "alpha_xx");
  require_probability(alpha_yx, "alpha_yx");

  Rng rng(config.seed);
  Trajectory traj;
  traj.points.reserve(config.n_events + 1);
  BranchingState state{config.x0, config.y0, 0};
  double eta = state.eta();
  traj.points.push_back(record(state, eta));
  while (state.n < config.n_events) {
    state = step(state, alpha_xx, alpha_yx, config, rng);
    if (state.z() == 0) {
      traj.extinct = true;
      traj.points.push_back(record(state, eta));
      break;
    }
    eta = state.eta();
    traj.points.push_back(record(state, eta));
  }
  return traj;
}

std::vector<OdePoint> ode_integrate(double m, double alpha_xx, double alpha_yx,
                                    double z0, double x0, double horizon,
                                    double dt, std::size_t sample_every) {
  if (!(z0 > 0.0)) {
    throw DegenerateDenominator("ode_integrate: z0 must be positive");
  }
  if (!(dt > 0.0) || !(horizon >= dt)) {
    throw InvalidArgument("ode_integrate: need dt > 0 and horizon >= dt");
  }
  require_probability(alpha_xx, "alpha_xx");
  require_probability(alpha_yx, "alpha_yx");
  if (sample_every == 0) sample_every = 1;

  struct Vec {
    double z;
    double x;
  };
  auto field = [&](Vec v) -> Vec {
    if (!(v.z > 0.0)) return {0.0, 0.0};
    const double eta = v.x / v.z;
    return {m - 1.0 - v.z,
            eta * (alpha_xx * m - 1.0) + (1.0 - eta) * alpha_yx * m - v.x};
  };
  auto eta_of = [](Vec v) { return v.z > 0.0 ? v.x / v.z : 0.0; };

  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  std::vector<OdePoint> out;
  out.reserve(steps / sample_every + 2);
  Vec v{z0, x0};
  out.push_back({0.0, v.z, v.x, eta_of(v)});
  for (std::size_t i = 1; i <= steps; ++i) {
    const Vec k1 = field(v);
    const Vec k2 = field({v.z + 0.5 * dt * k1.z, v.x + 0.5 * dt * k1.x});
    const Vec k3 = field({v.z + 0.5 * dt * k2.z, v.x + 0.5 * dt * k2.x});
    const Vec k4 = field({v.z + dt * k3.z, v.x + dt * k3.x});
    v.z += dt / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
    v.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    if (i % sample_every == 0 || i == steps) {
      out.push_back({static_cast<double>(i) * dt, v.z, v.x, eta_of(v)});
    }
  }
  return out;
}

FixedPoint fixed_point(double m, double alpha_xx, double alpha_yx) {
  if (!(m > 1.0)) {
    std::ostringstream msg;
    msg << "fixed_point: mean offspring m = " << m
        << " <= 1 is subcritical; the normalized population has no positive "
           "limit";
    throw Subcritical(msg.str());
  }
  const double z = m - 1.0;
  return {z, eta_star(alpha_xx, alpha_yx) * z};
}

}  // namespace bp2
