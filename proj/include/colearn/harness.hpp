#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "colearn/bounds.hpp"
#include "colearn/core.hpp"
#include "colearn/ctmc.hpp"
#include "colearn/jumpchain.hpp"
#include "colearn/meanfield.hpp"
#include "colearn/stats.hpp"

namespace colearn {

struct ExperimentConfig {
  ModelParams params;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 1;
  double time_horizon = 30.0;  // T
  double ode_step = 0.01;      // h
  std::uint64_t event_cap = 0; // 0 selects the default cap
  double delta = 0.5;          // Theorem-1 comparison parameter
  double eps_prime = 0.1;      // deviation exceedance threshold
  double coupling_start = 0.0; // 0 selects the default 1/lambda
  int workers = 0;             // 0 selects hardware concurrency

  double coupling_start_or_default() const {
    return coupling_start > 0.0 ? coupling_start : 1.0 / params.clock_rate;
  }
};

// Point estimate with confidence interval; no estimate leaves the harness
// without one.
struct Estimate {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t n = 0;
};

// Runs fn(trial_index) for every trial on a worker pool. Each trial derives
// its own RNG stream from (master_seed, trial index) inside fn, so the
// worker count never affects any trial's outcome.
void parallel_trials(std::uint64_t trials, int workers,
                     const std::function<void(std::uint64_t)>& fn);

// --- learnability ---

struct SuccessReport {
  Estimate success;           // Wilson 95% frequency of absorbing at the best arm
  BoundValue bound;           // Theorem-1 lower bound at the config's delta
  std::uint64_t absorbed = 0; // trials that reached absorption
  std::uint64_t capped = 0;   // trials cut off by the event cap
  bool cap_warning = false;   // capped fraction above 1%
};

SuccessReport estimate_success(const ExperimentConfig& config);

// --- fluid-limit deviation ---

struct DeviationReport {
  Estimate mean_sup;          // mean of sup_t ||Y^N(t) - Y(t)|| over trials
  Estimate exceedance;        // frequency of sup >= eps'
  double theoretical_exceed = 0.0;  // C0 * exp(-N * C(eps'))
  bool bound_vacuous = false;       // theoretical bound >= 1
};

DeviationReport estimate_deviation(const ExperimentConfig& config);

// --- embedded-walk verification ---

struct WalkReport {
  std::uint64_t up_moves = 0;
  std::uint64_t down_moves = 0;
  Estimate up_frequency;      // Wilson 99%
  double target = 0.0;        // p1/(p1+p2)
  double min_eta = 1.0;       // over every visited pre-move state
  bool eta_bound_holds = false;
};

WalkReport verify_walk(const ExperimentConfig& config);

// --- coupling verification ---

struct CouplingReport {
  std::uint64_t runs = 0;
  std::uint64_t coupled_steps = 0;   // non-absorbed steps of the coupled walk
  std::uint64_t hat_up_steps = 0;
  double chi_square = 0.0;           // against up-probability p1/(p1+p2)
  bool chi_square_rejected = false;  // at significance 0.01
  Estimate embedded_top;             // P(W absorbs at N), Wilson 95%
  Estimate standard_top;             // P(W-hat absorbs at N), Wilson 95%
  double mean_gambler_exact = 0.0;   // closed form averaged over starts
  bool dominance_held = false;       // couple() throws otherwise
};

CouplingReport verify_coupling(const ExperimentConfig& config);

// --- trajectory emission ---

struct TrajectoryFiles {
  std::string ode_csv;
  std::vector<std::string> sim_csvs;
  std::string bound_csv;
};

TrajectoryFiles run_trajectory(const ExperimentConfig& config,
                               const std::string& out_dir);

// --- mu sweep ---

struct MuSweepRow {
  double mu = 0.0;
  Estimate success;
  double rate = 0.0;  // R at this mu
};

std::vector<MuSweepRow> mu_sweep(const ExperimentConfig& config,
                                 const std::vector<double>& mu_values);

// --- serialization ---

// Event CSV (idx, time, kind, from, to) preceded by a one-line JSON header
// with params, seed and terminal reason.
void write_trace_csv(const std::string& path, const EventTrace& trace,
                     const ModelParams& params, std::uint64_t seed);

// Trajectory CSV (t, y0..yK); shared schema for ODE and scaled simulation
// output so the two overlay directly.
void write_trajectory_csv(const std::string& path, const OdeTrajectory& traj);
void write_scaled_trace_csv(const std::string& path, const EventTrace& trace,
                            const std::vector<double>& grid);

// Coupled-walk CSV (step, w, w_hat, coin).
void write_coupling_csv(const std::string& path, const CoupledWalkPair& pair);

std::string format_double(double v);

}  // namespace colearn
