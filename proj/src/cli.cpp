#include "bp2/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bp2/branching.hpp"
#include "bp2/config.hpp"
#include "bp2/csv.hpp"
#include "bp2/errors.hpp"
#include "bp2/lagrange.hpp"
#include "bp2/montecarlo.hpp"
#include "bp2/policy.hpp"
#include "bp2/verify.hpp"

namespace bp2 {

namespace {

constexpr std::size_t kFastReplications = 100;

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replications;
  bool fast = false;
};

// Input problems detected before any computation starts.
struct ValidationFailure {
  std::string message;
};

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

RunConfig load(const CommonFlags& flags, bool required) {
  if (flags.config_path.empty()) {
    if (required) throw ValidationFailure{"--config is required"};
    return RunConfig{};
  }
  try {
    return load_config(flags.config_path);
  } catch (const InvalidArgument& e) {
    throw ValidationFailure{e.what()};
  }
}

void apply_overrides(const CommonFlags& flags, RunConfig& cfg) {
  if (flags.seed) {
    cfg.seed = *flags.seed;
    cfg.verify.seed = *flags.seed;
  }
  if (flags.fast) {
    cfg.scenario.replications = kFastReplications;
    cfg.verify.replications = kFastReplications;
  }
  if (flags.replications) {
    cfg.scenario.replications = *flags.replications;
    cfg.verify.replications = *flags.replications;
  }
}

template <class Fn>
void validating(Fn fn) {
  try {
    fn();
  } catch (const InvalidArgument& e) {
    throw ValidationFailure{e.what()};
  }
}

void require_out(const CommonFlags& flags) {
  if (flags.out_path.empty()) throw ValidationFailure{"--out is required"};
}

CsvTable ensemble_table(const EnsembleSummary& e) {
  CsvTable t{{"event_index", "mean_eta", "std_eta", "mean_zbar"}, {}};
  t.rows.reserve(e.mean_eta.size());
  for (std::size_t i = 0; i < e.mean_eta.size(); ++i) {
    t.rows.push_back({static_cast<double>(i), e.mean_eta[i], e.std_eta[i],
                      e.mean_zbar[i]});
  }
  return t;
}

CsvTable tag_table(const EnsembleSummary& e) {
  CsvTable t{{"event_index", "tag", "belief", "weight", "mean_eta"}, {}};
  for (const TagEnsemble& te : e.tags) {
    for (std::size_t i = 0; i < te.mean_eta.size(); ++i) {
      t.rows.push_back({static_cast<double>(i), static_cast<double>(te.tag),
                        te.belief, te.weight, te.mean_eta[i]});
    }
  }
  return t;
}

int cmd_simulate(const CommonFlags& flags, bool with_extras, std::ostream& out) {
  RunConfig cfg = load(flags, true);
  apply_overrides(flags, cfg);
  require_out(flags);
  validating([&] { cfg.scenario.validate(); });

  const Scenario& s = cfg.scenario;
  const EnsembleSummary e = run_scenario(s, cfg.seed);
  write_csv_file(flags.out_path, ensemble_table(e));
  if (with_extras) {
    write_csv_file(flags.out_path + ".tags.csv", tag_table(e));
    // Mean-field path at the tag-averaged comment probability.
    const double alpha = e.predicted_eta;
    const auto& b = s.branching;
    const auto path = ode_integrate(
        b.mean_offspring(), alpha, alpha, static_cast<double>(b.x0 + b.y0),
        static_cast<double>(b.x0), 50.0, 1e-3, 100);
    CsvTable ode{{"t", "z", "x", "eta"}, {}};
    for (const OdePoint& p : path) ode.rows.push_back({p.t, p.z, p.x, p.eta});
    write_csv_file(flags.out_path + ".ode.csv", ode);
  }
  out << (with_extras ? "ensemble " : "simulate ") << to_string(s.policy)
      << " lambda " << fixed(s.effort) << ": final " << fixed(e.final_mean_eta)
      << " predicted " << fixed(e.predicted_eta) << " std "
      << fixed(e.final_std_eta) << " R " << e.replications << " extinct "
      << fixed(e.extinction_rate) << '\n';
  return kExitOk;
}

int cmd_equilibrium(const CommonFlags& flags, std::optional<double> k_flag,
                    std::optional<std::size_t> lambda_grid,
                    std::optional<std::size_t> belief_grid, std::ostream& out,
                    std::ostream& err) {
  RunConfig cfg = load(flags, false);
  apply_overrides(flags, cfg);
  require_out(flags);
  const double k = k_flag ? *k_flag : cfg.equilibrium.k.value_or(1.0);
  const std::size_t lg = lambda_grid.value_or(cfg.equilibrium.lambda_grid);
  const std::size_t bg = belief_grid.value_or(cfg.equilibrium.belief_grid);
  std::optional<CostFunction> cost;
  validating([&] {
    cost = CostFunction::quadratic(k);
    if (lg < 11 || bg < 11) {
      throw InvalidArgument("equilibrium grids must have at least 11 points");
    }
  });

  const EquilibriumReport r = sender_optimal_equilibrium(*cost, lg, bg);
  const auto m = find_multipliers(r.tau_star, r.lambda_star, *cost);
  const double curvature = m ? lagrangian_curvature(m->psi, r.lambda_star) : 0.0;
  const bool certified = m && m->psi <= 0.0 && curvature >= -1e-9;

  CsvTable t{{"k", "lambda_bar", "lambda_star", "sender_value", "ic_residual",
              "plausibility_gap", "psi", "phi", "rho", "curvature", "belief",
              "weight"},
             {}};
  const MultiplierSet ms = m.value_or(MultiplierSet{});
  for (const Atom& a : r.tau_star.atoms()) {
    t.rows.push_back({k, r.lambda_bar, r.lambda_star, r.sender_value,
                      r.ic_residual, r.plausibility_gap, ms.psi, ms.phi, ms.rho,
                      curvature, a.belief, a.weight});
  }
  write_csv_file(flags.out_path, t);

  std::ofstream txt(flags.out_path + ".txt");
  txt << "quadratic cost k = " << format_number(k) << '\n'
      << "lambda_bar       = " << format_number(r.lambda_bar) << '\n'
      << "lambda_star      = " << format_number(r.lambda_star) << '\n'
      << "sender value     = " << format_number(r.sender_value) << '\n'
      << "IC residual      = " << format_number(r.ic_residual) << '\n'
      << "plausibility gap = " << format_number(r.plausibility_gap) << '\n'
      << "grids            = " << lg << " efforts x " << bg << " beliefs\n"
      << "posterior:\n";
  for (const Atom& a : r.tau_star.atoms()) {
    txt << "  mu = " << format_number(a.belief)
        << "  weight = " << format_number(a.weight) << '\n';
  }
  if (m) {
    txt << "multipliers: psi = " << format_number(ms.psi)
        << ", phi = " << format_number(ms.phi)
        << ", rho = " << format_number(ms.rho)
        << ", curvature = " << format_number(curvature) << '\n';
  } else {
    txt << "multipliers: none found\n";
  }

  if (!certified) {
    err << "error: Lagrangian verifier rejected the oracle optimum at lambda "
        << format_number(r.lambda_star) << '\n';
    return kExitRuntime;
  }
  out << "equilibrium k " << format_number(k) << ": lambda_star "
      << format_number(r.lambda_star) << " value " << format_number(r.sender_value)
      << " lambda_bar " << format_number(r.lambda_bar) << " psi "
      << format_number(ms.psi) << '\n';
  return kExitOk;
}

int cmd_verify(const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load(flags, false);
  apply_overrides(flags, cfg);
  const auto results = run_verification(cfg.verify);
  std::size_t passed = 0;
  std::ofstream report;
  if (!flags.out_path.empty()) report.open(flags.out_path);
  for (const CheckResult& r : results) {
    std::string line = (r.passed ? "PASS " : "FAIL ") + r.name;
    if (!r.passed) line += ": " + r.detail;
    out << line << '\n';
    if (report) report << line << '\n';
    if (r.passed) ++passed;
  }
  out << "verify: " << passed << "/" << results.size() << " checks passed\n";
  if (passed != results.size()) {
    err << "error: " << results.size() - passed << " check(s) failed\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_sweep(const CommonFlags& flags, std::ostream& out) {
  RunConfig cfg = load(flags, true);
  apply_overrides(flags, cfg);
  require_out(flags);
  validating([&] {
    cfg.scenario.branching.validate();
    if (cfg.scenario.replications < 1) {
      throw InvalidArgument("replications must be >= 1");
    }
    const auto cost = CostFunction::quadratic(cfg.sweep.k);
    for (double lambda : cfg.sweep.lambdas) (void)hybrid_tagging(lambda, cost);
  });
  const auto rows = trend_vs_effort_sweep(
      cfg.sweep.k, cfg.sweep.lambdas, cfg.scenario.branching,
      cfg.scenario.replications, cfg.seed, cfg.scenario.sampling);
  CsvTable t{{"lambda", "predicted_eta", "simulated_eta"}, {}};
  for (const SweepRow& r : rows) t.rows.push_back({r.effort, r.predicted, r.simulated});
  write_csv_file(flags.out_path, t);
  double worst = 0.0;
  for (const SweepRow& r : rows) worst = std::max(worst, std::abs(r.simulated - r.predicted));
  out << "sweep k " << format_number(cfg.sweep.k) << ": " << rows.size()
      << " efforts, max |simulated - predicted| " << fixed(worst) << '\n';
  return kExitOk;
}

void add_common(CLI::App* sub, CommonFlags& flags, bool with_out) {
  sub->add_option("--config", flags.config_path, "Path to a JSON run configuration");
  if (with_out) sub->add_option("--out", flags.out_path, "Output CSV path");
  sub->add_option("--seed", flags.seed, "Base seed (overrides config)");
  sub->add_option("--replications", flags.replications,
                  "Replications per ensemble (overrides config)")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--fast", flags.fast, "Use 100 replications");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Persuaded branching-process model: solver and simulator", "bp2"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::optional<double> k_flag;
  std::optional<std::size_t> lambda_grid;
  std::optional<std::size_t> belief_grid;

  auto* simulate_cmd = app.add_subcommand("simulate", "Run a scenario ensemble, write its mean trend CSV");
  add_common(simulate_cmd, flags, true);
  auto* ensemble_cmd = app.add_subcommand(
      "ensemble", "Like simulate, plus per-tag and mean-field CSVs");
  add_common(ensemble_cmd, flags, true);
  auto* equilibrium_cmd = app.add_subcommand(
      "equilibrium", "Solve the sender's problem and certify it");
  add_common(equilibrium_cmd, flags, true);
  equilibrium_cmd->add_option("--k", k_flag, "Quadratic cost parameter (> 1/2)");
  equilibrium_cmd->add_option("--lambda-grid", lambda_grid, "Effort grid size");
  equilibrium_cmd->add_option("--belief-grid", belief_grid, "Belief grid size");
  auto* verify_cmd = app.add_subcommand("verify", "Run the self-check suite");
  add_common(verify_cmd, flags, true);
  auto* sweep_cmd = app.add_subcommand("sweep", "Trend versus effort under hybrid tagging");
  add_common(sweep_cmd, flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (*simulate_cmd) return cmd_simulate(flags, false, out);
    if (*ensemble_cmd) return cmd_simulate(flags, true, out);
    if (*equilibrium_cmd) {
      return cmd_equilibrium(flags, k_flag, lambda_grid, belief_grid, out, err);
    }
    if (*verify_cmd) return cmd_verify(flags, out, err);
    if (*sweep_cmd) return cmd_sweep(flags, out);
  } catch (const ValidationFailure& v) {
    err << "error: invalid input: " << v.message << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}

}  // namespace bp2
