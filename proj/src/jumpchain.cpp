#include "colearn/jumpchain.hpp"

#include <cmath>

namespace colearn {

JumpChain extract_jump_chain(const EventTrace& trace) {
  JumpChain chain;
  chain.states.reserve(trace.events.size() + 1);
  chain.states.push_back(trace.initial);
  SystemState state = trace.initial;
  double prev_time = 0.0;
  for (const auto& ev : trace.events) {
    state = apply_direction(state, ev.dir);
    chain.states.push_back(state);
    chain.holding_times.push_back(ev.time - prev_time);
    prev_time = ev.time;
  }
  return chain;
}

BestArmWalk extract_best_arm_walk(const JumpChain& chain,
                                  const std::vector<double>& jump_times,
                                  int best_arm) {
  const std::size_t idx = static_cast<std::size_t>(best_arm);
  BestArmWalk walk;
  walk.positions.push_back(chain.states.front().counts[idx]);
  for (std::size_t l = 1; l < chain.states.size(); ++l) {
    const int value = chain.states[l].counts[idx];
    if (value == walk.positions.back()) continue;
    walk.positions.push_back(value);
    walk.jump_indices.push_back(l - 1);
    walk.move_times.push_back(jump_times[l - 1]);
    walk.pre_move_states.push_back(chain.states[l - 1]);
  }
  return walk;
}

BestArmWalk extract_best_arm_walk(const EventTrace& trace, int best_arm) {
  std::vector<double> times;
  times.reserve(trace.events.size());
  for (const auto& ev : trace.events) times.push_back(ev.time);
  return extract_best_arm_walk(extract_jump_chain(trace), times, best_arm);
}

double eta(const ModelParams& params, const SystemState& pre_jump_state) {
  const double birth = birth_rate(params, pre_jump_state, params.best_arm);
  const double death = death_rate(params, pre_jump_state, params.best_arm);
  if (birth + death == 0.0)
    throw UndefinedEta("best arm has neither birth nor death rate here");
  return birth / (birth + death);
}

CoupledWalkPair couple(const ModelParams& params, const BestArmWalk& walk,
                       double coupling_start_time, Rng& rng) {
  const int n = params.n_agents;
  const double p_up =
      params.best_mean() / (params.best_mean() + params.second_mean());

  // Moves at times >= t_c belong to the coupled segment (a jump at exactly
  // t_c is treated as occurring after t_c).
  std::size_t start = 0;
  while (start < walk.move_times.size() && walk.move_times[start] < coupling_start_time)
    ++start;

  CoupledWalkPair pair;
  pair.w.push_back(walk.positions[start]);
  pair.w_hat.push_back(walk.positions[start]);

  for (std::size_t i = start; i < walk.move_times.size(); ++i) {
    const int step = walk.positions[i + 1] - walk.positions[i];
    const int hat = pair.w_hat.back();
    int hat_next = hat;
    CoinOutcome coin = CoinOutcome::NotApplicable;

    if (hat != 0 && hat != n) {
      if (step < 0) {
        hat_next = hat - 1;
      } else {
        const double head_p = p_up / eta(params, walk.pre_move_states[i]);
        if (head_p > 1.0 + 1e-12)
          throw InvalidCoin("eta below p1/(p1+p2): HEAD probability " +
                            std::to_string(head_p));
        coin = rng.bernoulli(std::min(head_p, 1.0)) ? CoinOutcome::Head
                                                    : CoinOutcome::Tail;
        // Up, then TAIL undoes it twice: net -1.
        hat_next = coin == CoinOutcome::Head ? hat + 1 : hat - 1;
      }
    }

    pair.w.push_back(walk.positions[i + 1]);
    pair.w_hat.push_back(hat_next);
    pair.coin_outcomes.push_back(coin);
    if (pair.w.back() < pair.w_hat.back())
      throw DominanceViolated("coupled standard walk overtook the embedded walk");
  }
  return pair;
}

std::vector<int> standard_walk(const ModelParams& params, int z0, int n,
                               Rng& rng, std::uint64_t max_steps) {
  const double denom = params.best_mean() + params.second_mean();
  std::vector<int> positions{z0};
  if (denom == 0.0) return positions;
  const double p_up = params.best_mean() / denom;
  for (std::uint64_t s = 0; s < max_steps; ++s) {
    const int z = positions.back();
    if (z == 0 || z == n) break;
    positions.push_back(rng.bernoulli(p_up) ? z + 1 : z - 1);
  }
  return positions;
}

bool standard_walk_absorbs_at_top(const ModelParams& params, int z0, int n,
                                  Rng& rng) {
  const double p_up =
      params.best_mean() / (params.best_mean() + params.second_mean());
  int z = z0;
  while (z != 0 && z != n) z += rng.bernoulli(p_up) ? 1 : -1;
  return z == n;
}

}  // namespace colearn
