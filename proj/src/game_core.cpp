#include "bp2/game_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "bp2/errors.hpp"

namespace bp2 {

namespace {

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << what << " must lie in [0,1], got " << v;
    throw InvalidArgument(msg.str());
  }
}

void require_interior_effort(double effort, const char* op) {
  require_unit_interval(effort, "effort");
  if (effort == 0.0 || effort == 1.0) {
    std::ostringstream msg;
    msg << op << ": effort " << effort
        << " is degenerate (division by lambda(1-lambda))";
    throw DegeneratePrior(msg.str());
  }
}

}  // namespace

Belief::Belief(double mu) : mu_(mu) { require_unit_interval(mu, "belief"); }

Prior::Prior(double effort) : effort_(effort) {
  require_unit_interval(effort, "effort");
}

CostFunction::CostFunction(Fn value, Fn gradient, Fn hessian)
    : value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)) {
  if (!value_ || !gradient_ || !hessian_) {
    throw AssumptionViolation("cost function needs value, gradient and hessian");
  }
  if (value_(0.0) != 0.0) throw AssumptionViolation("cost: c(0) must be 0");
  if (gradient_(0.0) != 0.0) throw AssumptionViolation("cost: c'(0) must be 0");
  if (!(gradient_(1.0) > 1.0)) {
    std::ostringstream msg;
    msg << "cost: c'(1) must exceed 1, got " << gradient_(1.0);
    throw AssumptionViolation(msg.str());
  }
  constexpr int kSteps = 1000;
  double prev = gradient_(0.0);
  for (int i = 1; i <= kSteps; ++i) {
    const double x = static_cast<double>(i) / kSteps;
    const double g = gradient_(x);
    if (!(g > prev)) {
      std::ostringstream msg;
      msg << "cost: c' is not strictly increasing near " << x;
      throw AssumptionViolation(msg.str());
    }
    if (i < kSteps && !(hessian_(x) > 0.0)) {
      std::ostringstream msg;
      msg << "cost: c'' must be positive on (0,1), fails at " << x;
      throw AssumptionViolation(msg.str());
    }
    prev = g;
  }
}

CostFunction CostFunction::quadratic(double k) {
  if (!(k > 0.5)) {
    std::ostringstream msg;
    msg << "quadratic cost needs k > 1/2 so that c'(1) = 2k > 1, got k = " << k;
    throw AssumptionViolation(msg.str());
  }
  return CostFunction([k](double x) { return k * x * x; },
                      [k](double x) { return 2.0 * k * x; },
                      [k](double) { return 2.0 * k; });
}

SignalingPolicy::SignalingPolicy(std::array<std::vector<double>, 2> rows)
    : rows_(std::move(rows)) {
  if (rows_[0].empty() || rows_[0].size() != rows_[1].size()) {
    throw InvalidArgument("policy rows must be nonempty and of equal length");
  }
  for (const auto& r : rows_) {
    double sum = 0.0;
    for (double p : r) {
      require_unit_interval(p, "policy entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "policy row sums to " << sum << ", expected 1";
      throw InvalidArgument(msg.str());
    }
  }
}

SignalingPolicy SignalingPolicy::identity() {
  return SignalingPolicy({std::vector<double>{1.0, 0.0},
                          std::vector<double>{0.0, 1.0}});
}

SignalingPolicy SignalingPolicy::uniform(std::size_t tags) {
  if (tags == 0) throw InvalidArgument("uniform policy needs at least one tag");
  std::vector<double> row(tags, 1.0 / static_cast<double>(tags));
  return SignalingPolicy({row, row});
}

PosteriorDistribution::PosteriorDistribution(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InvalidArgument("posterior distribution is empty");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.belief < b.belief; });
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    require_unit_interval(atoms_[i].belief, "support belief");
    if (!(atoms_[i].weight >= 0.0)) {
      throw InvalidArgument("posterior weights must be nonnegative");
    }
    if (i > 0 && atoms_[i].belief - atoms_[i - 1].belief <= kBeliefTolerance) {
      throw InvalidArgument("posterior support beliefs must be distinct");
    }
    total += atoms_[i].weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "posterior weights sum to " << total << ", expected 1";
    throw InvalidArgument(msg.str());
  }
}

PosteriorDistribution PosteriorDistribution::merged(std::vector<Atom> atoms,
                                                    double drop_below) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.belief < b.belief; });
  std::vector<Atom> out;
  for (const Atom& a : atoms) {
    if (!out.empty() && a.belief - out.back().belief <= kBeliefTolerance) {
      out.back().weight += a.weight;
    } else {
      out.push_back(a);
    }
  }
  std::erase_if(out, [&](const Atom& a) { return a.weight < drop_below; });
  const double total = std::accumulate(
      out.begin(), out.end(), 0.0,
      [](double acc, const Atom& a) { return acc + a.weight; });
  if (out.empty() || !(total > 0.0)) {
    throw InvalidArgument("posterior distribution has no positive mass");
  }
  for (Atom& a : out) a.weight /= total;
  return PosteriorDistribution(std::move(out));
}

double PosteriorDistribution::weight_at(double belief) const noexcept {
  for (const Atom& a : atoms_) {
    if (std::abs(a.belief - belief) <= kBeliefTolerance) return a.weight;
  }
  return 0.0;
}

double PosteriorDistribution::interior_mass() const noexcept {
  double m = 0.0;
  for (const Atom& a : atoms_) {
    if (a.belief > kBeliefTolerance && a.belief < 1.0 - kBeliefTolerance) {
      m += a.weight;
    }
  }
  return m;
}

double best_response(Belief mu) noexcept { return mu.mu(); }

double receiver_utility(State omega, double action) {
  require_unit_interval(action, "action");
  const double d = action - static_cast<double>(static_cast<int>(omega));
  return -d * d;
}

// -(1 - E[w]) E[w] + E[w]^2: penalty for negative comments plus the squared
// positivity of the trend.
double sender_value(Belief mu) noexcept {
  const double m = mu.mu();
  return m * (m - 1.0) + m * m;
}

double agent_value(Belief mu) noexcept { return mu.mu(); }

double ic_integrand(Belief mu, double effort, const CostFunction& cost) {
  require_interior_effort(effort, "ic_integrand");
  const double m = mu.mu();
  return m * (m - effort) / (effort * (1.0 - effort)) - cost.gradient(effort);
}

double tag_marginal(const SignalingPolicy& pi, std::size_t tag,
                    double effort) {
  const Prior p(effort);
  return pi(State::fake, tag) * p.probability(State::fake) +
         pi(State::accurate, tag) * p.probability(State::accurate);
}

double tag_belief(const SignalingPolicy& pi, std::size_t tag, double effort) {
  const double marginal = tag_marginal(pi, tag, effort);
  if (marginal > 0.0) {
    return std::clamp(pi(State::accurate, tag) * effort / marginal, 0.0, 1.0);
  }
  const double mass = pi(State::fake, tag) + pi(State::accurate, tag);
  // Tag never emitted in either state: any belief is consistent.
  if (mass == 0.0) return effort;
  return pi(State::accurate, tag) / mass;
}

PosteriorDistribution posterior_from_policy(const SignalingPolicy& pi,
                                            double effort) {
  Prior prior(effort);
  std::vector<Atom> atoms;
  atoms.reserve(pi.tags());
  for (std::size_t s = 0; s < pi.tags(); ++s) {
    const double marginal = tag_marginal(pi, s, prior.effort());
    if (marginal <= 0.0) continue;
    atoms.push_back({tag_belief(pi, s, prior.effort()), marginal});
  }
  return PosteriorDistribution::merged(std::move(atoms), 0.0);
}

SignalingPolicy policy_from_posterior(const PosteriorDistribution& tau,
                                      double effort) {
  const Prior prior(effort);
  if (!check_bayes_plausible(tau, effort)) {
    std::ostringstream msg;
    msg << "posterior mean " << expected_belief(tau)
        << " does not match prior " << effort;
    throw NotPlausible(msg.str());
  }
  const double p_fake = prior.probability(State::fake);
  const double p_acc = prior.probability(State::accurate);
  const std::size_t n = tau.size();
  std::array<std::vector<double>, 2> rows{std::vector<double>(n),
                                          std::vector<double>(n)};
  for (std::size_t s = 0; s < n; ++s) {
    const Atom& a = tau[s];
    const double mass_fake = a.weight * (1.0 - a.belief);
    const double mass_acc = a.weight * a.belief;
    if ((p_fake == 0.0 && mass_fake > kBeliefTolerance) ||
        (p_acc == 0.0 && mass_acc > kBeliefTolerance)) {
      std::ostringstream msg;
      msg << "support belief " << a.belief
          << " puts mass on a state with zero prior at effort " << effort;
      throw DegeneratePrior(msg.str());
    }
    rows[0][s] = p_fake > 0.0 ? mass_fake / p_fake : 0.0;
    rows[1][s] = p_acc > 0.0 ? mass_acc / p_acc : 0.0;
  }
  // Rows of states with zero prior are unconstrained; spread them uniformly.
  // Rows of states with prior mass sum to 1 up to the plausibility slack.
  for (auto& row : rows) {
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    if (sum <= 0.0) {
      std::fill(row.begin(), row.end(), 1.0 / static_cast<double>(n));
    } else {
      for (double& v : row) v = std::min(v / sum, 1.0);
    }
  }
  return SignalingPolicy(std::move(rows));
}

double expected_belief(const PosteriorDistribution& tau) noexcept {
  double e = 0.0;
  for (const Atom& a : tau.atoms()) e += a.weight * a.belief;
  return e;
}

double expected_sender_value(const PosteriorDistribution& tau) noexcept {
  double e = 0.0;
  for (const Atom& a : tau.atoms()) e += a.weight * sender_value(Belief(a.belief));
  return e;
}

double expected_ic_residual(const PosteriorDistribution& tau, double effort,
                            const CostFunction& cost) {
  double e = 0.0;
  for (const Atom& a : tau.atoms()) {
    e += a.weight * ic_integrand(Belief(a.belief), effort, cost);
  }
  return e;
}

bool check_bayes_plausible(const PosteriorDistribution& tau, double effort,
                           double tol) noexcept {
  return std::abs(expected_belief(tau) - effort) <= tol;
}

}  // namespace bp2
