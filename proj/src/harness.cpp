#include "colearn/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "json.hpp"

namespace colearn {

namespace {

int effective_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 4;
}

// Sup over the grid of the l2 distance between the scaled sample path
// (right-continuous) and the reference trajectory.
double sup_deviation(const EventTrace& trace, const OdeTrajectory& traj,
                     int population) {
  std::vector<int> counts = trace.initial.counts;
  const double n = static_cast<double>(population);
  std::size_t next_event = 0;
  double sup = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    while (next_event < trace.events.size() &&
           trace.events[next_event].time <= t) {
      const auto& dir = trace.events[next_event].dir;
      --counts[static_cast<std::size_t>(dir.from_class)];
      ++counts[static_cast<std::size_t>(dir.to_class)];
      ++next_event;
    }
    double dist2 = 0.0;
    for (std::size_t d = 0; d < counts.size(); ++d) {
      const double diff = static_cast<double>(counts[d]) / n - traj.points[i].point[d];
      dist2 += diff * diff;
    }
    sup = std::max(sup, dist2);
  }
  return std::sqrt(sup);
}

nlohmann::json params_json(const ModelParams& params) {
  return {{"n_agents", params.n_agents},
          {"n_arms", params.n_arms},
          {"clock_rate", params.clock_rate},
          {"explore_prob", params.explore_prob},
          {"arm_means", params.arm_means},
          {"best_arm", params.best_arm}};
}

const char* reason_name(TerminalReason reason) {
  switch (reason) {
    case TerminalReason::Absorbed: return "absorbed";
    case TerminalReason::TimeLimit: return "time_limit";
    case TerminalReason::EventCap: return "event_cap";
  }
  return "unknown";
}

}  // namespace

void parallel_trials(std::uint64_t trials, int workers,
                     const std::function<void(std::uint64_t)>& fn) {
  const int n_workers =
      static_cast<int>(std::min<std::uint64_t>(trials, effective_workers(workers)));
  if (n_workers <= 1) {
    for (std::uint64_t i = 0; i < trials; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= trials) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

SuccessReport estimate_success(const ExperimentConfig& config) {
  enum : int { kFailed, kSucceeded, kCapped };
  std::vector<int> outcome(config.trials, kFailed);

  parallel_trials(config.trials, config.workers, [&](std::uint64_t trial) {
    Rng rng = Rng::stream(config.master_seed, trial);
    const EventTrace trace =
        simulate_ctmc(config.params, rng, {std::nullopt, config.event_cap});
    if (trace.terminal_reason == TerminalReason::EventCap) {
      outcome[trial] = kCapped;
    } else if (trace.absorbed_class == config.params.best_arm) {
      outcome[trial] = kSucceeded;
    }
  });

  SuccessReport report;
  std::uint64_t successes = 0;
  for (int o : outcome) {
    if (o == kCapped) {
      ++report.capped;
    } else {
      ++report.absorbed;
      if (o == kSucceeded) ++successes;
    }
  }
  report.cap_warning =
      static_cast<double>(report.capped) > 0.01 * static_cast<double>(config.trials);
  const Interval ci = wilson_interval(successes, report.absorbed, kZ95);
  report.success = {static_cast<double>(successes) / static_cast<double>(report.absorbed),
                    ci.low, ci.high, report.absorbed};
  if (config.params.second_mean() > 0.0) {
    report.bound = theorem1_bound(config.params, config.delta);
  } else {
    // No competing arm: success is certain, the ruin bound is moot.
    report.bound = {0.0, true};
  }
  return report;
}

DeviationReport estimate_deviation(const ExperimentConfig& config) {
  const OdeTrajectory traj =
      integrate(config.params, config.time_horizon, config.ode_step);

  std::vector<double> sups(config.trials, 0.0);
  parallel_trials(config.trials, config.workers, [&](std::uint64_t trial) {
    Rng rng = Rng::stream(config.master_seed, trial);
    const EventTrace trace = simulate_ctmc(
        config.params, rng, {config.time_horizon, config.event_cap});
    sups[trial] = sup_deviation(trace, traj, config.params.n_agents);
  });

  DeviationReport report;
  const Interval mean_ci = normal_interval(sups, kZ95);
  report.mean_sup = {sample_mean(sups), mean_ci.low, mean_ci.high, config.trials};

  std::uint64_t exceed = 0;
  for (double s : sups)
    if (s >= config.eps_prime) ++exceed;
  const Interval exc_ci = wilson_interval(exceed, config.trials, kZ95);
  report.exceedance = {static_cast<double>(exceed) / static_cast<double>(config.trials),
                       exc_ci.low, exc_ci.high, config.trials};

  const double c = deviation_constant(config.params, config.time_horizon,
                                      config.eps_prime);
  report.theoretical_exceed = 2.0 * (config.params.n_arms + 1.0) *
                              std::exp(-static_cast<double>(config.params.n_agents) * c);
  report.bound_vacuous = report.theoretical_exceed >= 1.0;
  return report;
}

WalkReport verify_walk(const ExperimentConfig& config) {
  struct TrialResult {
    std::uint64_t up = 0;
    std::uint64_t down = 0;
    double min_eta = 1.0;
  };
  std::vector<TrialResult> results(config.trials);

  parallel_trials(config.trials, config.workers, [&](std::uint64_t trial) {
    Rng rng = Rng::stream(config.master_seed, trial);
    const EventTrace trace =
        simulate_ctmc(config.params, rng, {std::nullopt, config.event_cap});
    const BestArmWalk walk = extract_best_arm_walk(trace, config.params.best_arm);
    TrialResult& r = results[trial];
    for (std::size_t i = 0; i + 1 < walk.positions.size(); ++i) {
      const int pre = walk.positions[i];
      if (pre == 0 || pre == config.params.n_agents) continue;
      if (walk.positions[i + 1] > pre) {
        ++r.up;
      } else {
        ++r.down;
      }
      r.min_eta = std::min(r.min_eta, eta(config.params, walk.pre_move_states[i]));
    }
  });

  WalkReport report;
  for (const auto& r : results) {
    report.up_moves += r.up;
    report.down_moves += r.down;
    report.min_eta = std::min(report.min_eta, r.min_eta);
  }
  const std::uint64_t moves = report.up_moves + report.down_moves;
  const Interval ci = wilson_interval(report.up_moves, moves, kZ99);
  report.up_frequency = {
      static_cast<double>(report.up_moves) / static_cast<double>(moves), ci.low,
      ci.high, moves};
  report.target = config.params.best_mean() /
                  (config.params.best_mean() + config.params.second_mean());
  report.eta_bound_holds = report.min_eta >= report.target - 1e-12;
  return report;
}

CouplingReport verify_coupling(const ExperimentConfig& config) {
  struct TrialResult {
    std::uint64_t steps = 0;
    std::uint64_t hat_up = 0;
    bool counted = false;        // reached absorption (not capped)
    bool w_top = false;
    bool hat_top = false;
    double gambler = 0.0;
  };
  std::vector<TrialResult> results(config.trials);
  const double t_c = config.coupling_start_or_default();

  parallel_trials(config.trials, config.workers, [&](std::uint64_t trial) {
    Rng rng = Rng::stream(config.master_seed, trial);
    const EventTrace trace =
        simulate_ctmc(config.params, rng, {std::nullopt, config.event_cap});
    const BestArmWalk walk = extract_best_arm_walk(trace, config.params.best_arm);
    const CoupledWalkPair pair = couple(config.params, walk, t_c, rng);

    TrialResult& r = results[trial];
    for (std::size_t i = 0; i < pair.coin_outcomes.size(); ++i) {
      const int prev = pair.w_hat[i];
      if (prev == 0 || prev == config.params.n_agents) continue;
      ++r.steps;
      if (pair.w_hat[i + 1] > prev) ++r.hat_up;
    }

    r.gambler = gambler_exact(config.params, pair.w_hat.front(),
                              config.params.n_agents);
    int hat_final = pair.w_hat.back();
    if (hat_final != 0 && hat_final != config.params.n_agents) {
      // The coupled walk's marginal law is exactly the standard walk, so
      // finishing it standalone preserves its absorption probability.
      hat_final = standard_walk_absorbs_at_top(config.params, hat_final,
                                               config.params.n_agents, rng)
                      ? config.params.n_agents
                      : 0;
    }
    r.hat_top = hat_final == config.params.n_agents;
    if (trace.terminal_reason == TerminalReason::Absorbed) {
      r.counted = true;
      r.w_top = trace.absorbed_class == config.params.best_arm;
    }
  });

  CouplingReport report;
  report.runs = config.trials;
  std::uint64_t absorbed = 0, w_top = 0, hat_top = 0;
  double gambler_sum = 0.0;
  for (const auto& r : results) {
    report.coupled_steps += r.steps;
    report.hat_up_steps += r.hat_up;
    if (r.counted) {
      ++absorbed;
      if (r.w_top) ++w_top;
    }
    if (r.hat_top) ++hat_top;
    gambler_sum += r.gambler;
  }
  const double p_up = config.params.best_mean() /
                      (config.params.best_mean() + config.params.second_mean());
  report.chi_square = chi_square_binary(
      report.hat_up_steps, report.coupled_steps - report.hat_up_steps, p_up);
  report.chi_square_rejected = report.chi_square > kChiSq1Df99;

  const Interval w_ci = wilson_interval(w_top, absorbed, kZ95);
  report.embedded_top = {static_cast<double>(w_top) / static_cast<double>(absorbed),
                         w_ci.low, w_ci.high, absorbed};
  const Interval hat_ci = wilson_interval(hat_top, config.trials, kZ95);
  report.standard_top = {
      static_cast<double>(hat_top) / static_cast<double>(config.trials),
      hat_ci.low, hat_ci.high, config.trials};
  report.mean_gambler_exact = gambler_sum / static_cast<double>(config.trials);
  report.dominance_held = true;  // couple() throws on any violation
  return report;
}

TrajectoryFiles run_trajectory(const ExperimentConfig& config,
                               const std::string& out_dir) {
  const OdeTrajectory traj =
      integrate(config.params, config.time_horizon, config.ode_step);

  TrajectoryFiles files;
  files.ode_csv = out_dir + "/ode.csv";
  write_trajectory_csv(files.ode_csv, traj);

  files.sim_csvs.resize(config.trials);
  parallel_trials(config.trials, config.workers, [&](std::uint64_t trial) {
    Rng rng = Rng::stream(config.master_seed, trial);
    const EventTrace trace = simulate_ctmc(
        config.params, rng, {config.time_horizon, config.event_cap});
    const std::string path = out_dir + "/sim_" + std::to_string(trial) + ".csv";
    write_scaled_trace_csv(path, trace, traj.times);
    files.sim_csvs[trial] = path;
  });

  // Per-time bound curve exp(-tR) + eps'; meaningful for t >= t_bar(0.5).
  const ConvergenceRate rate = convergence_rate(config.params);
  files.bound_csv = out_dir + "/bound.csv";
  std::ofstream out(files.bound_csv);
  out << "t,bound,t_bar\n";
  const double t_bar = rate.t_bar(0.5);
  for (double t : traj.times) {
    out << format_double(t) << ','
        << format_double(std::exp(-t * rate.rate) + config.eps_prime) << ','
        << format_double(t_bar) << '\n';
  }
  return files;
}

std::vector<MuSweepRow> mu_sweep(const ExperimentConfig& config,
                                 const std::vector<double>& mu_values) {
  std::vector<MuSweepRow> rows;
  rows.reserve(mu_values.size());
  for (double mu : mu_values) {
    ExperimentConfig sub = config;
    sub.params = validate_params(config.params.n_agents, config.params.n_arms,
                                 config.params.clock_rate, mu,
                                 config.params.arm_means);
    const SuccessReport report = estimate_success(sub);
    rows.push_back({mu, report.success, convergence_rate(sub.params).rate});
  }
  return rows;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const std::string& path, const EventTrace& trace,
                     const ModelParams& params, std::uint64_t seed) {
  nlohmann::json header = {{"params", params_json(params)},
                           {"seed", seed},
                           {"terminal_reason", reason_name(trace.terminal_reason)}};
  if (trace.terminal_reason == TerminalReason::Absorbed)
    header["absorbed_class"] = trace.absorbed_class;

  std::ofstream out(path);
  out << "# " << header.dump() << '\n';
  out << "event_index,time,kind,from_class,to_class\n";
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto& ev = trace.events[i];
    out << i << ',' << format_double(ev.time) << ','
        << (ev.dir.is_birth() ? "birth" : "swap") << ',' << ev.dir.from_class
        << ',' << ev.dir.to_class << '\n';
  }
}

void write_trajectory_csv(const std::string& path, const OdeTrajectory& traj) {
  std::ofstream out(path);
  out << 't';
  for (std::size_t d = 0; d < traj.points.front().point.size(); ++d)
    out << ",y" << d;
  out << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << format_double(traj.times[i]);
    for (double v : traj.points[i].point) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_scaled_trace_csv(const std::string& path, const EventTrace& trace,
                            const std::vector<double>& grid) {
  std::ofstream out(path);
  std::vector<int> counts = trace.initial.counts;
  const double n = static_cast<double>(trace.initial.population());
  out << 't';
  for (std::size_t d = 0; d < counts.size(); ++d) out << ",y" << d;
  out << '\n';
  std::size_t next_event = 0;
  for (double t : grid) {
    while (next_event < trace.events.size() &&
           trace.events[next_event].time <= t) {
      const auto& dir = trace.events[next_event].dir;
      --counts[static_cast<std::size_t>(dir.from_class)];
      ++counts[static_cast<std::size_t>(dir.to_class)];
      ++next_event;
    }
    out << format_double(t);
    for (int c : counts) out << ',' << format_double(static_cast<double>(c) / n);
    out << '\n';
  }
}

void write_coupling_csv(const std::string& path, const CoupledWalkPair& pair) {
  std::ofstream out(path);
  out << "step,w,w_hat,coin\n";
  for (std::size_t i = 0; i < pair.w.size(); ++i) {
    out << i << ',' << pair.w[i] << ',' << pair.w_hat[i] << ',';
    if (i == 0) {
      out << "start";
    } else {
      switch (pair.coin_outcomes[i - 1]) {
        case CoinOutcome::Head: out << "head"; break;
        case CoinOutcome::Tail: out << "tail"; break;
        case CoinOutcome::NotApplicable: out << "na"; break;
      }
    }
    out << '\n';
  }
}

}  // namespace colearn
