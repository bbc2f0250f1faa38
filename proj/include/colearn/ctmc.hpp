#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "colearn/core.hpp"
#include "colearn/rng.hpp"

namespace colearn {

// Rate at which the count of arm k increases: wake-ups of no-preference
// agents that pull arm k (uniform or social) plus wake-ups of other-arm
// agents that socially sample arm k, in both cases followed by reward 1.
double birth_rate(const ModelParams& params, const SystemState& state, int arm);

// Rate at which the count of arm k decreases: an arm-k agent socially
// samples some other arm and gets reward 1 there.
double death_rate(const ModelParams& params, const SystemState& state, int arm);

// Outflow of the no-preference class: a no-preference agent wakes up,
// picks some arm (uniform or social) and earns reward 1 there.
double null_death_rate(const ModelParams& params, const SystemState& state);

// All transitions with strictly positive rate out of `state`. An empty
// result means the state is absorbing.
std::vector<std::pair<TransitionDirection, double>> generator_row(
    const ModelParams& params, const SystemState& state);

enum class TerminalReason { Absorbed, TimeLimit, EventCap };

struct StopRule {
  // Absent means: run until absorption or the event cap.
  std::optional<double> time_limit;
  std::uint64_t event_cap = 0;  // 0 selects default_event_cap()
};

std::uint64_t default_event_cap(const ModelParams& params);

struct EventTrace {
  struct Event {
    double time = 0.0;
    TransitionDirection dir;
  };

  SystemState initial;
  std::vector<Event> events;
  TerminalReason terminal_reason = TerminalReason::Absorbed;
  // Class holding the whole population when terminal_reason == Absorbed.
  int absorbed_class = 0;

  // Re-applies every event; throws if any transition is impossible.
  SystemState replay() const;
  // State at time t (right-continuous step function of the events).
  SystemState state_at(double t) const;
};

// Exact holding-time / jump-chain simulation of the aggregate chain.
EventTrace simulate_ctmc(const ModelParams& params, Rng& rng, StopRule stop);
EventTrace simulate_ctmc(const ModelParams& params, std::uint64_t seed, StopRule stop);

// Agent-level simulation: one global rate-N*lambda clock, uniformly chosen
// agent, then the two-step sampling/adopting update with self-inclusive
// peer choice. Identical in law to simulate_ctmc.
EventTrace simulate_agents(const ModelParams& params, Rng& rng, StopRule stop);
EventTrace simulate_agents(const ModelParams& params, std::uint64_t seed, StopRule stop);

}  // namespace colearn
