#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace colearn {

struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonUniqueBestArm : ParamError {
  using ParamError::ParamError;
};
struct ZeroExplore : ParamError {
  using ParamError::ParamError;
};
struct OutOfRange : ParamError {
  using ParamError::ParamError;
};

// An impossible transition was requested (source class already empty).
struct NegativeCount : std::logic_error {
  using std::logic_error::logic_error;
};

// Validated model instance. `arm_means[k-1]` is the success probability of
// arm k; arms are 1-based throughout, class 0 is "no preference".
// Construct via validate_params().
struct ModelParams {
  int n_agents = 0;                // N
  int n_arms = 0;                  // K
  double clock_rate = 0.0;         // lambda, wake-ups per agent per unit time
  double explore_prob = 0.0;       // mu, uniform-sampling probability
  std::vector<double> arm_means;   // p_1 .. p_K
  int best_arm = 0;                // argmax of arm_means, 1-based

  double mean(int arm) const { return arm_means[static_cast<std::size_t>(arm) - 1]; }
  double best_mean() const { return mean(best_arm); }
  // Largest mean among the non-best arms; 0 when there is a single arm.
  double second_mean() const;
};

// Checks every model assumption: N, K >= 1, lambda > 0, mu in (0, 1],
// means in [0, 1] with a unique maximum. N = 1 is accepted but degenerate
// (an agent's social sample always returns its own memory).
ModelParams validate_params(int n_agents, int n_arms, double clock_rate,
                            double explore_prob, std::vector<double> arm_means);

// Occupancy vector [X_0 .. X_K]; entries sum to N.
struct SystemState {
  std::vector<int> counts;

  int population() const;
  // True iff the state equals N * e^k for the given arm k >= 1.
  bool is_unanimous(int arm) const;
  // Index of the largest entry (lowest index wins ties).
  int argmax_class() const;
};

SystemState initial_state(const ModelParams& params);

// A single transition: birth (from_class == 0) moves an agent from the
// no-preference class to `to_class`; a swap moves it between two arms.
struct TransitionDirection {
  int from_class = 0;
  int to_class = 0;

  bool is_birth() const { return from_class == 0; }
  bool operator==(const TransitionDirection&) const = default;
};

SystemState apply_direction(const SystemState& state, TransitionDirection dir);

// Point on the K-simplex.
struct ScaledState {
  std::vector<double> point;
};

ScaledState scale(const SystemState& state);

// Max deviation from the simplex: max(|sum - 1|, -min coordinate).
double simplex_violation(const ScaledState& x);

}  // namespace colearn
