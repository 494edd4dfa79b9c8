#include "bp2/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "bp2/errors.hpp"

namespace bp2 {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double get_real(const json& obj, const char* key, const std::string& where,
                double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& obj, const char* key,
                        const std::string& where, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw ConfigError(where + "." + key + ": expected a nonnegative integer");
}

std::string get_string(const json& obj, const char* key,
                       const std::string& where, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

template <class Fn>
auto rethrow_as_config(const std::string& where, Fn fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

void parse_scenario(const json& j, Scenario& s) {
  const std::string w = "scenario";
  only_keys(j, w,
            {"policy", "k", "lambda", "replications", "condition_state", "sampling"});
  s.policy = rethrow_as_config(w + ".policy", [&] {
    return policy_kind_from_string(get_string(j, "policy", w, to_string(s.policy)));
  });
  s.k = get_real(j, "k", w, s.k);
  s.effort = get_real(j, "lambda", w, s.effort);
  s.replications = get_count(j, "replications", w, s.replications);
  s.sampling = rethrow_as_config(w + ".sampling", [&] {
    return tag_sampling_from_string(get_string(j, "sampling", w, to_string(s.sampling)));
  });
  if (j.contains("condition_state")) {
    const json& v = j.at("condition_state");
    if (v.is_null()) {
      s.condition_state.reset();
    } else if (v == "fake" || v == 0) {
      s.condition_state = State::fake;
    } else if (v == "accurate" || v == 1) {
      s.condition_state = State::accurate;
    } else {
      throw ConfigError(w + ".condition_state: expected null, fake, accurate, 0 or 1");
    }
  }
}

void parse_branching(const json& j, BranchingConfig& b) {
  const std::string w = "branching";
  only_keys(j, w,
            {"x0", "y0", "mean_friends", "share_prob", "offspring_model", "n_events"});
  b.x0 = get_count(j, "x0", w, b.x0);
  b.y0 = get_count(j, "y0", w, b.y0);
  b.mean_friends = get_real(j, "mean_friends", w, b.mean_friends);
  b.share_prob = get_real(j, "share_prob", w, b.share_prob);
  b.n_events = get_count(j, "n_events", w, b.n_events);
  const std::string model = get_string(j, "offspring_model", w,
      b.offspring_model == OffspringModel::fixed_n ? "fixed_n" : "poisson_n");
  if (model == "fixed_n") {
    b.offspring_model = OffspringModel::fixed_n;
  } else if (model == "poisson_n") {
    b.offspring_model = OffspringModel::poisson_n;
  } else {
    throw ConfigError(w + ".offspring_model: expected fixed_n or poisson_n");
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(root, "config",
            {"schema_version", "seed", "scenario", "branching", "equilibrium",
             "sweep", "verify"});

  RunConfig cfg;
  cfg.schema_version =
      static_cast<int>(get_count(root, "schema_version", "config", kSchemaVersion));
  if (cfg.schema_version != kSchemaVersion) {
    throw ConfigError("config.schema_version: unsupported version " +
                      std::to_string(cfg.schema_version) + " (expected " +
                      std::to_string(kSchemaVersion) + ")");
  }
  cfg.seed = get_count(root, "seed", "config", cfg.seed);
  cfg.verify.seed = cfg.seed;
  if (root.contains("scenario")) parse_scenario(root.at("scenario"), cfg.scenario);
  if (root.contains("branching")) parse_branching(root.at("branching"), cfg.scenario.branching);

  if (root.contains("equilibrium")) {
    const json& j = root.at("equilibrium");
    const std::string w = "equilibrium";
    only_keys(j, w, {"k", "lambda_grid", "belief_grid"});
    if (j.contains("k")) cfg.equilibrium.k = get_real(j, "k", w, 1.0);
    cfg.equilibrium.lambda_grid = get_count(j, "lambda_grid", w, cfg.equilibrium.lambda_grid);
    cfg.equilibrium.belief_grid = get_count(j, "belief_grid", w, cfg.equilibrium.belief_grid);
  }
  if (root.contains("sweep")) {
    const json& j = root.at("sweep");
    const std::string w = "sweep";
    only_keys(j, w, {"k", "lambdas"});
    cfg.sweep.k = get_real(j, "k", w, cfg.sweep.k);
    if (j.contains("lambdas")) {
      const json& l = j.at("lambdas");
      if (!l.is_array() || l.empty()) {
        throw ConfigError(w + ".lambdas: expected a nonempty array of numbers");
      }
      cfg.sweep.lambdas.clear();
      for (const json& v : l) {
        if (!v.is_number()) throw ConfigError(w + ".lambdas: expected numbers");
        cfg.sweep.lambdas.push_back(v.get<double>());
      }
    }
  }
  if (root.contains("verify")) {
    const json& j = root.at("verify");
    const std::string w = "verify";
    only_keys(j, w, {"replications", "fixture"});
    cfg.verify.replications = get_count(j, "replications", w, cfg.verify.replications);
    if (j.contains("fixture")) {
      const json& f = j.at("fixture");
      only_keys(f, w + ".fixture", {"flip_ic_sign", "branching_m"});
      if (f.contains("flip_ic_sign")) {
        if (!f.at("flip_ic_sign").is_boolean()) {
          throw ConfigError(w + ".fixture.flip_ic_sign: expected a boolean");
        }
        cfg.verify.fixture.flip_ic_sign = f.at("flip_ic_sign").get<bool>();
      }
      if (f.contains("branching_m") && !f.at("branching_m").is_null()) {
        cfg.verify.fixture.branching_m = get_real(f, "branching_m", w + ".fixture", 25.0);
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

}  // namespace bp2
