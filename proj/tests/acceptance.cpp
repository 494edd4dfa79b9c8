// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bp2/branching.hpp"
#include "bp2/game_core.hpp"
#include "bp2/lagrange.hpp"
#include "bp2/montecarlo.hpp"
#include "bp2/parallel.hpp"
#include "bp2/policy.hpp"
#include "bp2/rng.hpp"

using namespace bp2;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kReplications = 1000;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Scenario reference_scenario(PolicyKind policy, double k, double effort) {
  Scenario s;
  s.policy = policy;
  s.k = k;
  s.effort = effort;
  s.replications = kReplications;
  return s;  // default branching: X0 = Y0 = 50, N = 50, q = 1/2, 1500 events
}

Outcome conditioned_fully_informative(State state, bool want_low) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  Scenario s = reference_scenario(PolicyKind::fully_informative, 1.0, 0.5);
  s.condition_state = state;
  const auto e = run_scenario(s, kSeed);
  const double dt = seconds_since(t0);
  o.detail << "mean final eta " << e.final_mean_eta << " (std " << e.final_std_eta
           << ", R " << e.replications << ", " << dt << " s)";
  if (want_low) {
    o.require(e.final_mean_eta < 0.05, "mean final eta < 0.05");
  } else {
    o.require(e.final_mean_eta > 0.95, "mean final eta > 0.95");
  }
  o.require(dt < 60.0, "runtime < 60 s");
  return o;
}

Outcome criterion1() { return conditioned_fully_informative(State::accurate, true); }
Outcome criterion2() { return conditioned_fully_informative(State::fake, false); }

Outcome criterion3() {
  Outcome o;
  const BranchingConfig base;
  const double m = base.mean_offspring();
  for (double alpha : {0.0, 0.5, 1.0}) {
    std::vector<double> zbar(kReplications);
    parallel_for(kReplications, [&](std::size_t r) {
      BranchingConfig c = base;
      c.seed = derive_seed(kSeed, r);
      zbar[r] = simulate(c, alpha, alpha).points.back().z_bar;
    });
    double mean = 0.0;
    for (double z : zbar) mean += z;
    mean /= static_cast<double>(kReplications);
    const auto end = ode_integrate(m, alpha, alpha, static_cast<double>(base.x0 + base.y0),
                                   static_cast<double>(base.x0)).back();
    const FixedPoint fp = fixed_point(m, alpha, alpha);
    const double ode_err = std::max(std::abs(end.z - fp.z_star), std::abs(end.x - fp.x_star));
    o.detail << " alpha " << alpha << ": mean Zbar " << mean << ", ode error " << ode_err << ";";
    o.require(std::abs(mean - (m - 1.0)) <= 0.05 * (m - 1.0), "Zbar within 5% of m - 1");
    o.require(std::abs(fp.x_star - eta_star(alpha, alpha) * (m - 1.0)) <= 1e-12,
              "fixed point x = eta_star (m - 1)");
    o.require(ode_err <= 1e-6, "ode within 1e-6 of the fixed point");
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto at_bar = run_scenario(reference_scenario(PolicyKind::hybrid, 1.0, 0.5), kSeed);
  o.detail << "lambda 0.5: " << at_bar.final_mean_eta << ";";
  o.require(std::abs(at_bar.final_mean_eta - 0.5) <= 0.02, "0.5 +- 0.02 at lambda_bar");
  for (double l : {0.2, 0.35}) {
    const auto e = run_scenario(reference_scenario(PolicyKind::hybrid, 1.0, l), kSeed + 1);
    o.detail << " lambda " << l << ": " << e.final_mean_eta << ";";
    o.require(e.final_mean_eta >= 0.55, "trend exceeds 0.5 by at least 0.05");
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const double lb = lambda_bar(CostFunction::quadratic(0.6));
  o.detail << "lambda_bar " << lb << ";";
  o.require(std::abs(lb - 5.0 / 6.0) <= 1e-10, "lambda_bar = 5/6");
  const BranchingConfig b;
  const auto rows = trend_vs_effort_sweep(0.6, {0.6, 0.7, lb}, b, kReplications, kSeed);
  for (const SweepRow& r : rows) {
    o.detail << " lambda " << r.effort << ": " << r.simulated << " vs " << 1.0 - r.effort << ";";
    o.require(std::abs(r.simulated - (1.0 - r.effort)) <= 0.03, "within 0.03 of 1 - lambda");
  }
  return o;
}

const std::vector<double> kCostGrid{0.6, 0.8, 1.0, 2.0, 5.0};
constexpr std::size_t kLambdaGrid = 200;
constexpr std::size_t kBeliefGrid = 101;

struct Solved {
  double k;
  EquilibriumReport report;
};

std::vector<Solved>& solved() {
  static std::vector<Solved> cache;
  return cache;
}

Outcome criterion6() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (double k : kCostGrid) {
    const auto cost = CostFunction::quadratic(k);
    const auto r = sender_optimal_equilibrium(cost, kLambdaGrid, kBeliefGrid);
    solved().push_back({k, r});
    const double target = 1.0 / (2.0 * k);
    const double step = r.lambda_bar / static_cast<double>(kLambdaGrid);
    o.detail << " k " << k << ": lambda* " << r.lambda_star << ", value " << r.sender_value
             << ", interior " << r.tau_star.interior_mass() << ";";
    o.require(std::abs(r.lambda_star - target) <= step, "lambda* within one step of 1/(2k)");
    o.require(r.tau_star.interior_mass() <= 1e-9, "interior mass <= 1e-9");
    o.require(std::abs(r.sender_value - r.lambda_bar) <= 1e-6, "value within 1e-6 of lambda_bar");
  }
  const double dt = seconds_since(t0);
  o.detail << " total " << dt << " s";
  o.require(dt < 30.0, "runtime < 30 s");
  return o;
}

Outcome criterion7() {
  Outcome o;
  if (solved().size() != kCostGrid.size()) {
    o.require(false, "criterion 6 optima unavailable");
    return o;
  }
  for (const Solved& s : solved()) {
    const auto cost = CostFunction::quadratic(s.k);
    const double l = s.report.lambda_star;
    const auto m = find_multipliers(s.report.tau_star, l, cost, kMultiplierGrid);
    if (!m) {
      o.require(false, "multipliers found for k " + std::to_string(s.k));
      continue;
    }
    const double curv = lagrangian_curvature(m->psi, l);
    const double excess = hyperplane_violation(*m, l, cost, kMultiplierGrid);
    double gap = 0.0;
    for (const Atom& a : s.report.tau_star.atoms()) {
      gap = std::max(gap, std::abs(lagrangian(Belief(a.belief), *m, l, cost) - m->rho));
    }
    o.detail << " k " << s.k << ": psi " << m->psi << ", curvature " << curv << ", excess "
             << excess << ", support gap " << gap << ";";
    o.require(m->psi <= 0.0, "psi <= 0");
    o.require(curv >= -1e-9, "curvature >= -1e-9");
    o.require(excess <= 1e-9, "L <= rho + 1e-9 on the grid");
    o.require(gap <= 1e-9, "equality on the support");
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  double worst_g = 0.0, worst_ic = 0.0, worst_trend = 0.0, worst_eta = 0.0;

  const auto c1 = CostFunction::quadratic(1.0);
  const double lb1 = lambda_bar(c1);
  for (int i = 1; i <= 50; ++i) {
    const GCheck g = g_check(lb1 * i / 50.0, c1);
    worst_g = std::max(worst_g, std::abs(g.closed_form - g.numeric));
  }

  const double ks[5] = {0.55, 0.6, 1.0, 2.0, 7.0};
  for (double k : ks) {
    const auto c = CostFunction::quadratic(k);
    const double lb = lambda_bar(c);
    for (int i = 1; i <= 10; ++i) {
      const double l = lb * i / 10.0;
      const auto h = hybrid_tagging(l, c);
      worst_ic = std::max(worst_ic, std::abs(expected_ic_residual(h, l, c)));
      // Every shipped policy: hybrid, fully informative, uninformative.
      worst_trend = std::max(worst_trend, std::abs(equilibrium_trend(h) - (1.0 - l)));
      worst_trend = std::max(worst_trend, std::abs(equilibrium_trend(fully_informative(l)) - (1.0 - l)));
      worst_trend = std::max(worst_trend, std::abs(equilibrium_trend(uninformative(l)) - (1.0 - l)));
    }
  }

  for (int i = 0; i <= 100; ++i) {
    const double a = i / 100.0;
    worst_eta = std::max(worst_eta, std::abs(eta_star(a, a) - a));
  }
  o.detail << "g " << worst_g << ", hybrid E[f] " << worst_ic << ", trend " << worst_trend
           << ", eta_star " << worst_eta;
  o.require(worst_g <= 1e-12, "g closed form vs numeric");
  o.require(worst_ic <= 1e-12, "hybrid E[f] = 0");
  o.require(worst_trend <= 1e-12, "trend = 1 - lambda");
  o.require(worst_eta <= 1e-12, "eta_star(a, a) = a");
  return o;
}

Outcome criterion9() {
  Outcome o;
  Rng rng(kSeed);

  double worst_round = 0.0, worst_plaus = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t tags = 2 + static_cast<std::size_t>(rng.uniform() * 4);
    std::array<std::vector<double>, 2> rows;
    for (auto& row : rows) {
      row.resize(tags);
      double sum = 0.0;
      for (double& v : row) sum += (v = rng.uniform());
      for (double& v : row) v /= sum;
    }
    const double l = 0.02 + 0.96 * rng.uniform();
    const auto tau = posterior_from_policy(SignalingPolicy(rows), l);
    const auto back = posterior_from_policy(policy_from_posterior(tau, l), l);
    worst_plaus = std::max(worst_plaus, std::abs(expected_belief(tau) - l));
    if (back.size() != tau.size()) {
      worst_round = 1.0;
      continue;
    }
    for (std::size_t i = 0; i < tau.size(); ++i) {
      worst_round = std::max(worst_round, std::abs(back[i].belief - tau[i].belief));
      worst_round = std::max(worst_round, std::abs(back[i].weight - tau[i].weight));
    }
  }

  // Receiver: grid search of -E[(a - omega)^2].
  const int grid = 10000;
  double worst_br = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double mu = rng.uniform();
    double best = -1e300, arg = 0.0;
    for (int j = 0; j <= grid; ++j) {
      const double a = static_cast<double>(j) / grid;
      const double v = -(mu * (a - 1.0) * (a - 1.0) + (1.0 - mu) * a * a);
      if (v > best) {
        best = v;
        arg = a;
      }
    }
    worst_br = std::max(worst_br, std::abs(best_response(Belief(mu)) - arg));
  }

  Scenario s = reference_scenario(PolicyKind::hybrid, 1.0, 0.3);
  s.replications = 200;
  const auto a = run_scenario(s, kSeed);
  const auto b = run_scenario(s, kSeed);
  BranchingConfig c;
  c.seed = kSeed;
  const auto ta = simulate(c, 0.3, 0.6);
  const auto tb = simulate(c, 0.3, 0.6);
  bool identical = a.mean_eta == b.mean_eta && a.std_eta == b.std_eta &&
                   a.mean_zbar == b.mean_zbar && ta.points.size() == tb.points.size();
  for (std::size_t i = 0; identical && i < ta.points.size(); ++i) {
    identical = ta.points[i].x == tb.points[i].x && ta.points[i].y == tb.points[i].y;
  }

  o.detail << "round trip " << worst_round << ", plausibility " << worst_plaus
           << ", best response vs grid " << worst_br << ", repeat runs "
           << (identical ? "identical" : "differ");
  o.require(worst_round <= 1e-9, "policy/posterior round trip");
  o.require(worst_plaus <= 1e-9, "Bayes plausibility");
  o.require(worst_br <= 0.5 / grid, "best response within grid resolution");
  o.require(identical, "bit-identical repeat runs");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 fully informative, accurate content: trend -> 0", criterion1},
      {"2 fully informative, fake content: trend -> 1", criterion2},
      {"3 population fixed point m - 1 and ode limit", criterion3},
      {"4 hybrid k = 1 trends", criterion4},
      {"5 hybrid k = 3/5 lambda_bar and trends", criterion5},
      {"6 sender-optimal equilibrium across k", criterion6},
      {"7 Lagrangian certificates", criterion7},
      {"8 closed-form identities", criterion8},
      {"9 property suites", criterion9},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s criterion %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.passed) ++failures;
  }
  std::printf("acceptance: %d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
