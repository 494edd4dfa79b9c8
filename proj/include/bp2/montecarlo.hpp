#pragma once

// Scenario ensembles: draw the content state and the platform's tag, map the
// tag to the receiver's belief and comment probabilities, and average many
// independent cascades.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bp2/branching.hpp"
#include "bp2/game_core.hpp"

namespace bp2 {

enum class PolicyKind { fully_informative, uninformative, hybrid };

/// How tags are assigned to replications.
///   independent: draw omega ~ p(lambda) (or the conditioned state), then
///                s ~ pi(. | omega), separately for every replication.
///   stratified:  systematic sampling over the tag law with one shared random
///                offset; each replication's tag still has the exact marginal
///                law, and tag counts are within one of R * weight.
enum class TagSampling { stratified, independent };

const char* to_string(PolicyKind kind) noexcept;
PolicyKind policy_kind_from_string(const std::string& name);
const char* to_string(TagSampling sampling) noexcept;
TagSampling tag_sampling_from_string(const std::string& name);

struct Scenario {
  PolicyKind policy = PolicyKind::hybrid;
  /// Quadratic cost parameter; used by the hybrid policy.
  double k = 1.0;
  double effort = 0.5;
  BranchingConfig branching;
  std::size_t replications = 1000;
  /// Fix the content state instead of drawing it from the prior.
  std::optional<State> condition_state;
  TagSampling sampling = TagSampling::stratified;

  /// Throws InvalidArgument / InfeasibleEffort / AssumptionViolation.
  void validate() const;
};

/// Signal-space policy the platform commits to in `s`.
SignalingPolicy scenario_policy(const Scenario& s);

/// Per-tag sub-ensemble.
struct TagEnsemble {
  std::size_t tag = 0;
  double belief = 0.0;
  /// Share of replications that drew this tag.
  double weight = 0.0;
  std::size_t count = 0;
  std::vector<double> mean_eta;
};

struct EnsembleSummary {
  std::vector<double> mean_eta;
  /// Population standard deviation across replications, per event index.
  std::vector<double> std_eta;
  std::vector<double> mean_zbar;
  std::vector<double> mean_xbar;
  std::vector<TagEnsemble> tags;
  double extinction_rate = 0.0;
  double final_mean_eta = 0.0;
  double final_std_eta = 0.0;
  /// E[1 - mu] under the tag law of the scenario.
  double predicted_eta = 0.0;
  std::size_t replications = 0;
};

/// Runs s.replications cascades. Replication r draws from the stream
/// derive_seed(base_seed, r); results do not depend on thread count.
EnsembleSummary run_scenario(const Scenario& s, std::uint64_t base_seed);

struct SweepRow {
  double effort;
  double predicted;
  double simulated;
};

/// Hybrid tagging at each effort; entry i uses seed derive_seed(base_seed, i).
std::vector<SweepRow> trend_vs_effort_sweep(
    double k, const std::vector<double>& efforts,
    const BranchingConfig& branching, std::size_t replications,
    std::uint64_t base_seed, TagSampling sampling = TagSampling::stratified);

}  // namespace bp2
