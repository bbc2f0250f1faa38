#include "colearn/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace colearn {

double ModelParams::second_mean() const {
  double second = 0.0;
  for (int k = 1; k <= n_arms; ++k) {
    if (k != best_arm) second = std::max(second, mean(k));
  }
  return second;
}

ModelParams validate_params(int n_agents, int n_arms, double clock_rate,
                            double explore_prob, std::vector<double> arm_means) {
  if (n_agents < 1) throw OutOfRange("n_agents must be a positive integer");
  if (n_arms < 1) throw OutOfRange("n_arms must be a positive integer");
  if (!(clock_rate > 0.0) || !std::isfinite(clock_rate))
    throw OutOfRange("clock_rate must be a positive real");
  if (explore_prob == 0.0)
    throw ZeroExplore("explore_prob = 0: no agent ever samples an arm on its own");
  if (!(explore_prob > 0.0) || explore_prob > 1.0)
    throw OutOfRange("explore_prob must lie in (0, 1]");
  if (static_cast<int>(arm_means.size()) != n_arms)
    throw OutOfRange("arm_means must have exactly n_arms entries");
  for (double p : arm_means) {
    if (!(p >= 0.0) || p > 1.0) throw OutOfRange("arm means must lie in [0, 1]");
  }
  auto it = std::max_element(arm_means.begin(), arm_means.end());
  if (std::count(arm_means.begin(), arm_means.end(), *it) > 1)
    throw NonUniqueBestArm("the maximal arm mean is attained more than once");

  ModelParams params;
  params.n_agents = n_agents;
  params.n_arms = n_arms;
  params.clock_rate = clock_rate;
  params.explore_prob = explore_prob;
  params.arm_means = std::move(arm_means);
  params.best_arm = static_cast<int>(it - params.arm_means.begin()) + 1;
  return params;
}

int SystemState::population() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

bool SystemState::is_unanimous(int arm) const {
  return counts[static_cast<std::size_t>(arm)] == population();
}

int SystemState::argmax_class() const {
  auto it = std::max_element(counts.begin(), counts.end());
  return static_cast<int>(it - counts.begin());
}

SystemState initial_state(const ModelParams& params) {
  SystemState state;
  state.counts.assign(static_cast<std::size_t>(params.n_arms) + 1, 0);
  state.counts[0] = params.n_agents;
  return state;
}

SystemState apply_direction(const SystemState& state, TransitionDirection dir) {
  SystemState next = state;
  auto& from = next.counts[static_cast<std::size_t>(dir.from_class)];
  if (from == 0)
    throw NegativeCount("transition from an empty class " +
                        std::to_string(dir.from_class));
  --from;
  ++next.counts[static_cast<std::size_t>(dir.to_class)];
  return next;
}

ScaledState scale(const SystemState& state) {
  const double n = static_cast<double>(state.population());
  ScaledState scaled;
  scaled.point.reserve(state.counts.size());
  for (int c : state.counts) scaled.point.push_back(static_cast<double>(c) / n);
  return scaled;
}

double simplex_violation(const ScaledState& x) {
  double sum = 0.0;
  double min_coord = 0.0;
  for (double v : x.point) {
    sum += v;
    min_coord = std::min(min_coord, v);
  }
  return std::max(std::abs(sum - 1.0), -min_coord);
}

}  // namespace colearn
