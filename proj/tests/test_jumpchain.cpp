#include "doctest.h"

#include <functional>
#include <vector>

#include "colearn/jumpchain.hpp"

using namespace colearn;

namespace {

EventTrace synthetic_trace() {
  // N=5, K=2. Arm-1 count after each event: 0, 1, 1, 2, 1.
  EventTrace trace;
  trace.initial = SystemState{{5, 0, 0}};
  trace.events = {{0.5, {0, 2}}, {1.0, {0, 1}}, {1.5, {0, 2}},
                  {2.0, {2, 1}}, {3.0, {1, 2}}};
  trace.terminal_reason = TerminalReason::TimeLimit;
  return trace;
}

void for_each_state(int n, int k,
                    const std::function<void(const SystemState&)>& fn) {
  std::vector<int> counts(static_cast<std::size_t>(k) + 1, 0);
  std::function<void(int, int)> rec = [&](int cls, int left) {
    if (cls == k) {
      counts[static_cast<std::size_t>(cls)] = left;
      fn(SystemState{counts});
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[static_cast<std::size_t>(cls)] = c;
      rec(cls + 1, left - c);
    }
  };
  rec(0, n);
}

}  // namespace

TEST_CASE("jump chain carries states and sojourn times") {
  const EventTrace trace = synthetic_trace();
  const JumpChain chain = extract_jump_chain(trace);
  REQUIRE(chain.states.size() == 6);
  REQUIRE(chain.holding_times.size() == 5);
  CHECK(chain.states.front().counts == std::vector<int>{5, 0, 0});
  CHECK(chain.states.back().counts == std::vector<int>{2, 1, 2});
  CHECK(chain.holding_times[0] == doctest::Approx(0.5));
  CHECK(chain.holding_times[1] == doctest::Approx(0.5));
  CHECK(chain.holding_times[4] == doctest::Approx(1.0));
}

TEST_CASE("best-arm walk keeps only strict moves of the tracked count") {
  const BestArmWalk walk = extract_best_arm_walk(synthetic_trace(), 1);
  CHECK(walk.positions == std::vector<int>{0, 1, 2, 1});
  CHECK(walk.jump_indices == std::vector<std::size_t>{1, 3, 4});
  REQUIRE(walk.move_times.size() == 3);
  CHECK(walk.move_times[0] == doctest::Approx(1.0));
  CHECK(walk.move_times[1] == doctest::Approx(2.0));
  CHECK(walk.move_times[2] == doctest::Approx(3.0));
  CHECK(walk.pre_move_states[0].counts == std::vector<int>{4, 0, 1});
  CHECK(walk.pre_move_states[1].counts == std::vector<int>{2, 1, 2});
  CHECK(walk.pre_move_states[2].counts == std::vector<int>{2, 2, 1});
}

TEST_CASE("eta matches a hand evaluation") {
  // Same state as the rate test: birth_1 = 4.0, death_1 = 0.72.
  const ModelParams p = validate_params(10, 2, 2.0, 0.5, {0.8, 0.4});
  CHECK(eta(p, SystemState{{4, 3, 3}}) ==
        doctest::Approx(4.0 / 4.72).epsilon(1e-14));
}

TEST_CASE("eta is undefined only where the best-arm count is frozen") {
  const ModelParams p = validate_params(10, 2, 1.0, 0.2, {0.8, 0.4});
  CHECK_THROWS_AS(eta(p, SystemState{{0, 0, 10}}), UndefinedEta);
  CHECK_NOTHROW(eta(p, SystemState{{10, 0, 0}}));
}

TEST_CASE("eta never falls below the standard-walk up probability") {
  const std::vector<ModelParams> models = {
      validate_params(12, 2, 1.0, 0.2, {0.8, 0.4}),
      validate_params(10, 2, 3.0, 1.0, {0.9, 0.85}),
      validate_params(9, 3, 0.7, 0.35, {0.9, 0.5, 0.2}),
      validate_params(8, 3, 1.3, 0.6, {0.6, 0.1, 0.55}),
  };
  for (const ModelParams& p : models) {
    const double p_up = p.best_mean() / (p.best_mean() + p.second_mean());
    for_each_state(p.n_agents, p.n_arms, [&](const SystemState& s) {
      const double birth = birth_rate(p, s, p.best_arm);
      const double death = death_rate(p, s, p.best_arm);
      if (birth + death == 0.0) return;
      CHECK(eta(p, s) >= p_up - 1e-12);
    });
  }
}

TEST_CASE("coupling mirrors down-moves and flips coins only on up-moves") {
  const ModelParams p = validate_params(30, 2, 1.0, 0.2, {0.8, 0.4});
  Rng sim(5);
  const EventTrace trace = simulate_ctmc(p, sim, {});
  const BestArmWalk walk = extract_best_arm_walk(trace, p.best_arm);
  Rng coin(99);
  const CoupledWalkPair pair = couple(p, walk, 1.0, coin);

  REQUIRE(pair.w.size() == pair.w_hat.size());
  REQUIRE(pair.coin_outcomes.size() + 1 == pair.w.size());
  for (std::size_t i = 0; i < pair.coin_outcomes.size(); ++i) {
    const int hat = pair.w_hat[i];
    const int hat_next = pair.w_hat[i + 1];
    CHECK(pair.w[i + 1] >= hat_next);  // dominance, also enforced internally
    CHECK(hat_next >= 0);
    CHECK(hat_next <= p.n_agents);
    if (hat == 0 || hat == p.n_agents) {
      CHECK(hat_next == hat);
      CHECK(pair.coin_outcomes[i] == CoinOutcome::NotApplicable);
    } else if (pair.w[i + 1] < pair.w[i]) {
      CHECK(hat_next == hat - 1);
      CHECK(pair.coin_outcomes[i] == CoinOutcome::NotApplicable);
    } else {
      CHECK((pair.coin_outcomes[i] == CoinOutcome::Head ||
             pair.coin_outcomes[i] == CoinOutcome::Tail));
      CHECK(hat_next ==
            (pair.coin_outcomes[i] == CoinOutcome::Head ? hat + 1 : hat - 1));
    }
  }
}

TEST_CASE("coupling start time selects the starting position") {
  const BestArmWalk walk = extract_best_arm_walk(synthetic_trace(), 1);
  const ModelParams p = validate_params(5, 2, 1.0, 0.2, {0.8, 0.4});
  Rng rng(1);

  const CoupledWalkPair from_zero = couple(p, walk, 0.0, rng);
  CHECK(from_zero.w.front() == 0);
  CHECK(from_zero.w == walk.positions);

  // A move at exactly the start time belongs to the coupled segment.
  const CoupledWalkPair at_move = couple(p, walk, 2.0, rng);
  CHECK(at_move.w.front() == 1);
  CHECK(at_move.w == std::vector<int>{1, 2, 1});

  const CoupledWalkPair past_end = couple(p, walk, 10.0, rng);
  CHECK(past_end.w == std::vector<int>{1});
  CHECK(past_end.coin_outcomes.empty());
}

TEST_CASE("standard walk takes unit steps and stops at the boundaries") {
  const ModelParams p = validate_params(10, 2, 1.0, 0.2, {0.8, 0.4});
  Rng rng(17);
  const std::vector<int> path = standard_walk(p, 3, 10, rng, 100000);
  for (std::size_t i = 1; i < path.size(); ++i) {
    CHECK(std::abs(path[i] - path[i - 1]) == 1);
    if (i + 1 < path.size()) {
      CHECK(path[i] != 0);
      CHECK(path[i] != 10);
    }
  }
  CHECK((path.back() == 0 || path.back() == 10));
}

TEST_CASE("standard walk from a boundary is already absorbed") {
  const ModelParams p = validate_params(10, 2, 1.0, 0.2, {0.8, 0.4});
  Rng rng(1);
  CHECK(standard_walk(p, 0, 10, rng, 100).size() == 1);
  CHECK(standard_walk(p, 10, 10, rng, 100).size() == 1);
  CHECK(standard_walk_absorbs_at_top(p, 10, 10, rng));
  CHECK_FALSE(standard_walk_absorbs_at_top(p, 0, 10, rng));
}
