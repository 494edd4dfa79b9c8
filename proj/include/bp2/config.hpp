#pragma once

// Run configuration for the CLI: one JSON document.
//
//   {
//     "schema_version": 1,
//     "seed": 42,
//     "scenario": {
//       "policy": "hybrid",              // fully_informative | uninformative | hybrid
//       "k": 1.0,
//       "lambda": 0.5,
//       "replications": 1000,
//       "condition_state": null,         // null | "fake" | "accurate" | 0 | 1
//       "sampling": "stratified"         // stratified | independent
//     },
//     "branching": {
//       "x0": 50, "y0": 50, "mean_friends": 50, "share_prob": 0.5,
//       "offspring_model": "fixed_n",    // fixed_n | poisson_n
//       "n_events": 1500
//     },
//     "equilibrium": { "k": 1.0, "lambda_grid": 200, "belief_grid": 101 },
//     "sweep": { "k": 0.6, "lambdas": [0.6, 0.7, 0.8333333333333334] },
//     "verify": {
//       "replications": 100,
//       "fixture": { "flip_ic_sign": false, "branching_m": null }
//     }
//   }
//
// Every section and key is optional; unknown keys are rejected.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bp2/montecarlo.hpp"
#include "bp2/verify.hpp"

namespace bp2 {

inline constexpr int kSchemaVersion = 1;

struct EquilibriumParams {
  std::optional<double> k;
  std::size_t lambda_grid = 200;
  std::size_t belief_grid = 101;
};

struct SweepParams {
  double k = 0.6;
  std::vector<double> lambdas{0.6, 0.7, 5.0 / 6.0};
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  std::uint64_t seed = 1;
  Scenario scenario;
  EquilibriumParams equilibrium;
  SweepParams sweep;
  VerifyOptions verify;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace bp2
