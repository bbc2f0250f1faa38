// Command-line driver for the collaborative best-option learning toolkit:
// exact simulation, mean-field integration, bound evaluation and the
// Monte Carlo verification experiments. Emits plot-ready CSV and JSON.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "colearn/bounds.hpp"
#include "colearn/harness.hpp"

namespace {

using colearn::ExperimentConfig;
using colearn::ModelParams;
using nlohmann::json;

struct RawOptions {
  int n = 200;
  int k = 2;
  double lambda = 1.0;
  double mu = 0.2;
  std::vector<double> p = {0.8, 0.4};
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  double horizon = 30.0;
  double step = 0.01;
  std::uint64_t event_cap = 0;
  double delta = 0.5;
  double eps_prime = 0.1;
  double coupling_start = 0.0;
  int workers = 0;
  std::string out_dir = "out";
  std::string format = "csv";
  std::string mode = "ctmc";
  std::vector<double> mu_values = {0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
  std::string config_path;
};

struct OptionHandles {
  std::map<std::string, CLI::Option*> by_key;
};

OptionHandles add_common_options(CLI::App* cmd, RawOptions& raw) {
  OptionHandles h;
  h.by_key["n"] = cmd->add_option("--n", raw.n, "population size N");
  h.by_key["k"] = cmd->add_option("--k", raw.k, "number of arms K");
  h.by_key["lambda"] = cmd->add_option("--lambda", raw.lambda, "clock rate");
  h.by_key["mu"] = cmd->add_option("--mu", raw.mu, "uniform-sampling probability");
  h.by_key["p"] = cmd->add_option("--p", raw.p, "arm means, comma separated")
                      ->delimiter(',');
  h.by_key["trials"] = cmd->add_option("--trials", raw.trials, "Monte Carlo trials");
  h.by_key["seed"] = cmd->add_option("--seed", raw.seed, "master seed");
  h.by_key["horizon"] = cmd->add_option("--horizon", raw.horizon, "time horizon T");
  h.by_key["step"] = cmd->add_option("--step", raw.step, "ODE step h");
  h.by_key["event_cap"] =
      cmd->add_option("--event-cap", raw.event_cap, "event cap (0 = default)");
  h.by_key["delta"] = cmd->add_option("--delta", raw.delta, "Theorem-1 delta");
  h.by_key["eps_prime"] =
      cmd->add_option("--eps-prime", raw.eps_prime, "deviation threshold eps'");
  h.by_key["coupling_start"] = cmd->add_option("--coupling-start", raw.coupling_start,
                                               "coupling start time (0 = 1/lambda)");
  h.by_key["workers"] = cmd->add_option("--workers", raw.workers,
                                        "worker threads (0 = hardware)");
  h.by_key["out"] = cmd->add_option("--out", raw.out_dir, "output directory");
  h.by_key["format"] = cmd->add_option("--format", raw.format, "csv or json")
                           ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--config", raw.config_path, "JSON config file; flags override");
  return h;
}

// Fills every option the user did not pass on the command line from the
// JSON config file.
void apply_config_file(const RawOptions& defaults, RawOptions& raw,
                       const OptionHandles& handles) {
  if (raw.config_path.empty()) return;
  std::ifstream in(raw.config_path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + raw.config_path);
  json doc = json::parse(in);

  auto unset = [&](const std::string& key) {
    auto it = handles.by_key.find(key);
    return it == handles.by_key.end() || it->second->count() == 0;
  };
  auto load = [&](const std::string& key, auto& field) {
    if (doc.contains(key) && unset(key)) field = doc[key].get<std::decay_t<decltype(field)>>();
  };
  (void)defaults;
  load("n", raw.n);
  load("k", raw.k);
  load("lambda", raw.lambda);
  load("mu", raw.mu);
  load("p", raw.p);
  load("trials", raw.trials);
  load("seed", raw.seed);
  load("horizon", raw.horizon);
  load("step", raw.step);
  load("event_cap", raw.event_cap);
  load("delta", raw.delta);
  load("eps_prime", raw.eps_prime);
  load("coupling_start", raw.coupling_start);
  load("workers", raw.workers);
  load("out", raw.out_dir);
  load("format", raw.format);
  load("mode", raw.mode);
  load("mu_values", raw.mu_values);
}

ExperimentConfig build_config(const RawOptions& raw) {
  ExperimentConfig config;
  config.params =
      colearn::validate_params(raw.n, raw.k, raw.lambda, raw.mu, raw.p);
  config.trials = raw.trials;
  config.master_seed = raw.seed;
  config.time_horizon = raw.horizon;
  config.ode_step = raw.step;
  config.event_cap = raw.event_cap;
  config.delta = raw.delta;
  config.eps_prime = raw.eps_prime;
  config.coupling_start = raw.coupling_start;
  config.workers = raw.workers;
  return config;
}

json params_json(const ModelParams& params) {
  return {{"n_agents", params.n_agents},
          {"n_arms", params.n_arms},
          {"clock_rate", params.clock_rate},
          {"explore_prob", params.explore_prob},
          {"arm_means", params.arm_means},
          {"best_arm", params.best_arm}};
}

json estimate_json(const colearn::Estimate& est) {
  return {{"point", est.point}, {"ci", {est.ci_low, est.ci_high}}, {"n", est.n}};
}

void write_estimate_file(const std::string& path, const std::string& experiment,
                         const ExperimentConfig& config, const colearn::Estimate& est,
                         double bound, bool vacuous, json extras) {
  json doc = {{"experiment", experiment},
              {"params", params_json(config.params)},
              {"point", est.point},
              {"ci", {est.ci_low, est.ci_high}},
              {"n", est.n},
              {"bound", bound},
              {"vacuous_flag", vacuous},
              {"seed", config.master_seed}};
  doc.update(extras);
  std::ofstream out(path);
  out << doc.dump(2) << '\n';
}

void ensure_dir(const std::string& dir) {
  std::filesystem::create_directories(dir);
}

int run_simulate(const RawOptions& raw) {
  const ExperimentConfig config = build_config(raw);
  ensure_dir(raw.out_dir);
  colearn::StopRule stop{config.time_horizon, config.event_cap};
  const colearn::EventTrace trace =
      raw.mode == "agents"
          ? colearn::simulate_agents(config.params, config.master_seed, stop)
          : colearn::simulate_ctmc(config.params, config.master_seed, stop);
  const std::string path = raw.out_dir + "/events.csv";
  colearn::write_trace_csv(path, trace, config.params, config.master_seed);
  std::cout << "wrote " << path << " (" << trace.events.size() << " events)\n";
  return 0;
}

int run_ode(const RawOptions& raw) {
  const ExperimentConfig config = build_config(raw);
  ensure_dir(raw.out_dir);
  const colearn::OdeTrajectory traj =
      colearn::integrate(config.params, config.time_horizon, config.ode_step);
  const std::string path = raw.out_dir + "/ode.csv";
  colearn::write_trajectory_csv(path, traj);
  std::cout << "wrote " << path << " (" << traj.times.size() << " points)\n";
  return 0;
}

int run_trajectory_cmd(const RawOptions& raw) {
  const ExperimentConfig config = build_config(raw);
  ensure_dir(raw.out_dir);
  const auto files = colearn::run_trajectory(config, raw.out_dir);
  std::cout << "wrote " << files.ode_csv << ", " << files.bound_csv << " and "
            << files.sim_csvs.size() << " simulated paths\n";
  return 0;
}

int run_learnability(const RawOptions& raw) {
  const ExperimentConfig config = build_config(raw);
  ensure_dir(raw.out_dir);
  const colearn::SuccessReport report = colearn::estimate_success(config);
  json extras = {{"absorbed", report.absorbed},
                 {"capped", report.capped},
                 {"cap_warning", report.cap_warning},
                 {"delta", config.delta}};
  const std::string path = raw.out_dir + "/learnability.json";
  write_estimate_file(path, "learnability", config, report.success,
                      report.bound.value, report.bound.vacuous, extras);
  if (report.cap_warning)
    std::cerr << "warning: " << report.capped
              << " trials hit the event cap (> 1%)\n";
  std::cout << "success " << report.success.point << " ["
            << report.success.ci_low << ", " << report.success.ci_high
            << "], bound " << report.bound.value
            << (report.bound.vacuous ? " (vacuous)" : "") << " -> " << path
            << '\n';
  return 0;
}

int run_deviation(const RawOptions& raw) {
  const ExperimentConfig config = build_config(raw);
  ensure_dir(raw.out_dir);
  const colearn::DeviationReport report = colearn::estimate_deviation(config);
  json extras = {{"exceedance", estimate_json(report.exceedance)},
                 {"eps_prime", config.eps_prime},
                 {"horizon", config.time_horizon}};
  const std::string path = raw.out_dir + "/deviation.json";
  write_estimate_file(path, "deviation", config, report.mean_sup,
                      report.theoretical_exceed, report.bound_vacuous, extras);
  std::cout << "mean sup-deviation " << report.mean_sup.point
            << ", exceedance " << report.exceedance.point << " vs bound "
            << report.theoretical_exceed
            << (report.bound_vacuous ? " (vacuous)" : "") << " -> " << path
            << '\n';
  return 0;
}

int run_walk_verify(const RawOptions& raw) {
  const ExperimentConfig config = build_config(raw);
  ensure_dir(raw.out_dir);
  const colearn::WalkReport report = colearn::verify_walk(config);
  json extras = {{"up_moves", report.up_moves},
                 {"down_moves", report.down_moves},
                 {"min_eta", report.min_eta},
                 {"eta_bound_holds", report.eta_bound_holds}};
  const std::string path = raw.out_dir + "/walk_verify.json";
  write_estimate_file(path, "walk_verify", config, report.up_frequency,
                      report.target, false, extras);
  std::cout << "up-move frequency " << report.up_frequency.point << " vs "
            << report.target << ", min eta " << report.min_eta << " -> "
            << path << '\n';
  return report.eta_bound_holds ? 0 : 2;
}

int run_couple_verify(const RawOptions& raw) {
  const ExperimentConfig config = build_config(raw);
  ensure_dir(raw.out_dir);
  const colearn::CouplingReport report = colearn::verify_coupling(config);
  json extras = {{"coupled_steps", report.coupled_steps},
                 {"hat_up_steps", report.hat_up_steps},
                 {"chi_square", report.chi_square},
                 {"chi_square_rejected", report.chi_square_rejected},
                 {"standard_top", estimate_json(report.standard_top)},
                 {"mean_gambler_exact", report.mean_gambler_exact},
                 {"dominance_held", report.dominance_held}};
  const std::string path = raw.out_dir + "/couple_verify.json";
  write_estimate_file(path, "couple_verify", config, report.embedded_top,
                      report.mean_gambler_exact, false, extras);
  std::cout << "P(W->N) " << report.embedded_top.point << " >= P(What->N) "
            << report.standard_top.point << ", chi2 " << report.chi_square
            << " -> " << path << '\n';
  return 0;
}

int run_bounds(const RawOptions& raw) {
  const ExperimentConfig config = build_config(raw);
  ensure_dir(raw.out_dir);
  const int z0 = colearn::initial_wealth_bound(config.params, config.delta).threshold;
  const colearn::BoundsReport report = colearn::bounds_report(
      config.params, config.delta, z0, config.time_horizon, config.eps_prime);

  json doc = {{"experiment", "bounds"},
              {"params", params_json(config.params)},
              {"delta", config.delta},
              {"z0", z0},
              {"theorem1_lower", report.theorem1_lower.value},
              {"theorem1_vacuous", report.theorem1_lower.vacuous},
              {"gambler_lower", report.gambler_lower},
              {"gambler_exact", report.gambler_exact_value},
              {"initial_wealth_threshold", report.initial_wealth_threshold},
              {"initial_wealth_prob", report.initial_wealth_prob},
              {"t_bar", report.t_bar},
              {"rate_R", report.rate},
              {"c0", report.c0},
              {"c1", report.c1},
              {"deviation_c", report.deviation_c},
              {"seed", config.master_seed}};
  const std::string path = raw.out_dir + "/bounds.json";
  std::ofstream out(path);
  out << doc.dump(2) << '\n';

  std::cout << "theorem1_lower        " << report.theorem1_lower.value
            << (report.theorem1_lower.vacuous ? "  (vacuous)" : "") << '\n'
            << "gambler_lower (z0=" << z0 << ")  " << report.gambler_lower << '\n'
            << "gambler_exact         " << report.gambler_exact_value << '\n'
            << "initial_wealth        >= " << report.initial_wealth_threshold
            << " w.p. " << report.initial_wealth_prob << '\n'
            << "rate_R                " << report.rate << '\n'
            << "t_bar(0.5)            " << report.t_bar << '\n'
            << "C0, C1                " << report.c0 << ", " << report.c1 << '\n';
  return 0;
}

int run_mu_sweep(const RawOptions& raw) {
  const ExperimentConfig config = build_config(raw);
  ensure_dir(raw.out_dir);
  const auto rows = colearn::mu_sweep(config, raw.mu_values);
  const std::string path = raw.out_dir + "/mu_sweep.csv";
  std::ofstream out(path);
  out << "mu,success,ci_low,ci_high,trials,rate_R\n";
  for (const auto& row : rows) {
    out << colearn::format_double(row.mu) << ','
        << colearn::format_double(row.success.point) << ','
        << colearn::format_double(row.success.ci_low) << ','
        << colearn::format_double(row.success.ci_high) << ',' << row.success.n
        << ',' << colearn::format_double(row.rate) << '\n';
  }
  std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative best-option learning: simulation and verification"};
  app.require_subcommand(1);

  RawOptions raw;
  const RawOptions defaults = raw;

  struct Command {
    CLI::App* cmd;
    OptionHandles handles;
    int (*run)(const RawOptions&);
  };
  std::vector<Command> commands;

  auto add = [&](const std::string& name, const std::string& desc,
                 int (*run)(const RawOptions&)) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    commands.push_back({cmd, add_common_options(cmd, raw), run});
    return cmd;
  };

  CLI::App* simulate =
      add("simulate", "one exact simulation run, events to CSV", run_simulate);
  simulate->add_option("--mode", raw.mode, "agents or ctmc")
      ->check(CLI::IsMember({"agents", "ctmc"}));
  add("ode", "integrate the mean-field ODE", run_ode);
  add("trajectory", "overlaid simulated and ODE trajectories", run_trajectory_cmd);
  add("learnability", "success-probability estimate vs Theorem-1 bound",
      run_learnability);
  add("deviation", "sup-norm deviation from the fluid limit", run_deviation);
  add("walk-verify", "embedded best-arm walk up-move frequency", run_walk_verify);
  add("couple-verify", "coupled-walk dominance and step-law checks",
      run_couple_verify);
  add("bounds", "closed-form bound table", run_bounds);
  add("mu-sweep", "success probability and rate R across mu", run_mu_sweep);

  try {
    app.parse(argc, argv);
    for (const auto& command : commands) {
      if (command.cmd->parsed()) {
        apply_config_file(defaults, raw, command.handles);
        return command.run(raw);
      }
    }
    return 1;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  } catch (const colearn::ParamError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const colearn::SecondBestZero& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const colearn::EpsOutOfWindow& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 2;
  }
}
