#include "bp2/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bp2/errors.hpp"
#include "bp2/parallel.hpp"
#include "bp2/policy.hpp"
#include "bp2/rng.hpp"

namespace bp2 {

namespace {

constexpr std::size_t kChunk = 256;

std::size_t draw_from(const std::vector<double>& weights, double u) {
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last = i;
    acc += weights[i];
    if (u < acc) return i;
  }
  return last;
}

}  // namespace

const char* to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::fully_informative: return "fully_informative";
    case PolicyKind::uninformative: return "uninformative";
    case PolicyKind::hybrid: return "hybrid";
  }
  return "?";
}

PolicyKind policy_kind_from_string(const std::string& name) {
  if (name == "fully_informative") return PolicyKind::fully_informative;
  if (name == "uninformative") return PolicyKind::uninformative;
  if (name == "hybrid") return PolicyKind::hybrid;
  throw InvalidArgument("unknown policy '" + name +
                        "' (expected fully_informative, uninformative, hybrid)");
}

const char* to_string(TagSampling sampling) noexcept {
  return sampling == TagSampling::stratified ? "stratified" : "independent";
}

TagSampling tag_sampling_from_string(const std::string& name) {
  if (name == "stratified") return TagSampling::stratified;
  if (name == "independent") return TagSampling::independent;
  throw InvalidArgument("unknown sampling '" + name +
                        "' (expected stratified, independent)");
}

void Scenario::validate() const {
  branching.validate();
  if (replications < 1) throw InvalidArgument("scenario.replications must be >= 1");
  if (!(effort >= 0.0 && effort <= 1.0)) {
    throw InvalidArgument("scenario.lambda must lie in [0,1]");
  }
  if (policy == PolicyKind::hybrid) {
    // Throws InfeasibleEffort naming lambda_bar when effort is too high.
    (void)hybrid_tagging(effort, CostFunction::quadratic(k));
  }
}

SignalingPolicy scenario_policy(const Scenario& s) {
  switch (s.policy) {
    case PolicyKind::fully_informative:
      return SignalingPolicy::identity();
    case PolicyKind::uninformative:
      return SignalingPolicy::uniform(2);
    case PolicyKind::hybrid: {
      const auto tau = hybrid_tagging(s.effort, CostFunction::quadratic(s.k));
      if (s.effort == 0.0 || s.effort == 1.0 || tau.size() == 1) {
        return SignalingPolicy::uniform(2);
      }
      return policy_from_posterior(tau, s.effort);
    }
  }
  throw InvalidArgument("unknown policy kind");
}

EnsembleSummary run_scenario(const Scenario& s, std::uint64_t base_seed) {
  s.validate();
  const SignalingPolicy pi = scenario_policy(s);
  const std::size_t tags = pi.tags();

  std::vector<double> belief(tags);
  std::vector<double> tag_law(tags);
  for (std::size_t t = 0; t < tags; ++t) {
    belief[t] = tag_belief(pi, t, s.effort);
    tag_law[t] = s.condition_state ? pi(*s.condition_state, t)
                                   : tag_marginal(pi, t, s.effort);
  }

  const std::size_t reps = s.replications;
  const std::size_t len = s.branching.n_events + 1;
  const double stratum_offset = Rng(splitmix64(base_seed)).uniform();

  auto draw_tag = [&](std::size_t r, Rng& rng) -> std::size_t {
    if (s.sampling == TagSampling::stratified) {
      const double v = (static_cast<double>(r) + stratum_offset) /
                       static_cast<double>(reps);
      return draw_from(tag_law, v);
    }
    const State omega =
        s.condition_state ? *s.condition_state
                          : (rng.bernoulli(s.effort) ? State::accurate
                                                     : State::fake);
    return draw_from(pi.row(omega), rng.uniform());
  };

  std::vector<double> sum_eta(len, 0.0), sum_eta2(len, 0.0);
  std::vector<double> sum_zbar(len, 0.0), sum_xbar(len, 0.0);
  std::vector<std::vector<double>> tag_sum(tags);
  std::vector<std::size_t> tag_count(tags, 0);
  std::size_t extinct = 0;

  struct Run {
    std::size_t tag;
    Trajectory traj;
  };
  std::vector<Run> chunk;
  for (std::size_t begin = 0; begin < reps; begin += kChunk) {
    const std::size_t count = std::min(kChunk, reps - begin);
    chunk.assign(count, Run{});
    parallel_for(count, [&](std::size_t i) {
      const std::size_t r = begin + i;
      Rng rng(derive_seed(base_seed, r));
      const std::size_t tag = draw_tag(r, rng);
      BranchingConfig cfg = s.branching;
      cfg.seed = rng.next_u64();
      const double alpha = alpha_from_belief(Belief(belief[tag]));
      chunk[i] = Run{tag, simulate(cfg, alpha, alpha)};
    });
    // Reduce in replication order so sums are bit-stable.
    for (const Run& run : chunk) {
      const auto& pts = run.traj.points;
      if (run.traj.extinct) ++extinct;
      auto& ts = tag_sum[run.tag];
      if (ts.empty()) ts.assign(len, 0.0);
      ++tag_count[run.tag];
      for (std::size_t i = 0; i < len; ++i) {
        const TrajectoryPoint& p = pts[std::min(i, pts.size() - 1)];
        sum_eta[i] += p.eta;
        sum_eta2[i] += p.eta * p.eta;
        sum_zbar[i] += p.z_bar;
        sum_xbar[i] += p.x_bar;
        ts[i] += p.eta;
      }
    }
  }

  EnsembleSummary out;
  out.replications = reps;
  const double inv = 1.0 / static_cast<double>(reps);
  out.mean_eta.resize(len);
  out.std_eta.resize(len);
  out.mean_zbar.resize(len);
  out.mean_xbar.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double mean = sum_eta[i] * inv;
    out.mean_eta[i] = mean;
    out.std_eta[i] = std::sqrt(std::max(0.0, sum_eta2[i] * inv - mean * mean));
    out.mean_zbar[i] = sum_zbar[i] * inv;
    out.mean_xbar[i] = sum_xbar[i] * inv;
  }
  for (std::size_t t = 0; t < tags; ++t) {
    if (tag_count[t] == 0) continue;
    TagEnsemble te;
    te.tag = t;
    te.belief = belief[t];
    te.count = tag_count[t];
    te.weight = static_cast<double>(tag_count[t]) * inv;
    te.mean_eta.resize(len);
    const double tinv = 1.0 / static_cast<double>(tag_count[t]);
    for (std::size_t i = 0; i < len; ++i) te.mean_eta[i] = tag_sum[t][i] * tinv;
    out.tags.push_back(std::move(te));
  }
  out.extinction_rate = static_cast<double>(extinct) * inv;
  out.final_mean_eta = out.mean_eta.back();
  out.final_std_eta = out.std_eta.back();
  for (std::size_t t = 0; t < tags; ++t) {
    out.predicted_eta += tag_law[t] * (1.0 - belief[t]);
  }
  return out;
}

std::vector<SweepRow> trend_vs_effort_sweep(double k,
                                            const std::vector<double>& efforts,
                                            const BranchingConfig& branching,
                                            std::size_t replications,
                                            std::uint64_t base_seed,
                                            TagSampling sampling) {
  std::vector<SweepRow> rows;
  rows.reserve(efforts.size());
  for (std::size_t i = 0; i < efforts.size(); ++i) {
    Scenario s;
    s.policy = PolicyKind::hybrid;
    s.k = k;
    s.effort = efforts[i];
    s.branching = branching;
    s.replications = replications;
    s.sampling = sampling;
    const EnsembleSummary e = run_scenario(s, derive_seed(base_seed, i));
    rows.push_back({efforts[i], e.predicted_eta, e.final_mean_eta});
  }
  return rows;
}

}  // namespace bp2
