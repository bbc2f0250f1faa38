#pragma once

#include <cstdint>
#include <vector>

#include "colearn/core.hpp"
#include "colearn/ctmc.hpp"
#include "colearn/rng.hpp"

namespace colearn {

struct UndefinedEta : std::domain_error {
  using std::domain_error::domain_error;
};
// HEAD probability above 1 would mean the embedded walk is less biased
// towards the best arm than the standard walk; must never fire.
struct InvalidCoin : std::logic_error {
  using std::logic_error::logic_error;
};
struct DominanceViolated : std::logic_error {
  using std::logic_error::logic_error;
};

// Space-time decomposition of a trace: the sequence of visited states and
// the sojourn time spent in each of them (one fewer than states for a
// terminated trace).
struct JumpChain {
  std::vector<SystemState> states;
  std::vector<double> holding_times;
};

JumpChain extract_jump_chain(const EventTrace& trace);

// The strict +/-1 moves of the best-arm count along the jump chain, with
// the state right before each move and the move's wall-clock time.
struct BestArmWalk {
  std::vector<int> positions;  // positions[0] is the initial count
  std::vector<std::size_t> jump_indices;
  std::vector<double> move_times;
  std::vector<SystemState> pre_move_states;
};

BestArmWalk extract_best_arm_walk(const JumpChain& chain,
                                  const std::vector<double>& jump_times,
                                  int best_arm);
BestArmWalk extract_best_arm_walk(const EventTrace& trace, int best_arm);

// Conditional probability that the best-arm count moves up rather than
// down from this state: birth / (birth + death) of the best arm.
double eta(const ModelParams& params, const SystemState& pre_jump_state);

enum class CoinOutcome : std::uint8_t { Head, Tail, NotApplicable };

struct CoupledWalkPair {
  std::vector<int> w;       // embedded walk over the coupled segment
  std::vector<int> w_hat;   // coupled standard walk, absorbed at 0 and N
  std::vector<CoinOutcome> coin_outcomes;
};

// Couples the embedded walk (moves at times >= t_c; a move at exactly t_c
// counts as after t_c) with a standard biased walk started at the best-arm
// count held just before t_c. Down-moves are mirrored; an up-move advances
// the standard walk and flips the eta-coin: HEAD keeps the up-step, TAIL
// turns it into a net down-step.
CoupledWalkPair couple(const ModelParams& params, const BestArmWalk& walk,
                       double coupling_start_time, Rng& rng);

// The standalone biased walk with up-probability p1/(p1+p2), absorbed at
// 0 and N. Stops early at absorption.
std::vector<int> standard_walk(const ModelParams& params, int z0, int n,
                               Rng& rng, std::uint64_t max_steps);

// Runs the standard walk until absorption; true iff absorbed at N.
bool standard_walk_absorbs_at_top(const ModelParams& params, int z0, int n,
                                  Rng& rng);

}  // namespace colearn
