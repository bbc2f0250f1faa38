#include "colearn/ctmc.hpp"

#include <algorithm>
#include <cmath>

namespace colearn {

namespace {

double as_double(int v) { return static_cast<double>(v); }

}  // namespace

double birth_rate(const ModelParams& params, const SystemState& state, int arm) {
  const double n = as_double(params.n_agents);
  const double lambda = params.clock_rate;
  const double mu = params.explore_prob;
  const double k = as_double(params.n_arms);
  const double x0 = as_double(state.counts[0]);
  const double xk = as_double(state.counts[static_cast<std::size_t>(arm)]);

  double other = 0.0;
  for (int j = 1; j <= params.n_arms; ++j) {
    if (j != arm) other += as_double(state.counts[static_cast<std::size_t>(j)]);
  }
  return x0 * lambda * (mu / k + (1.0 - mu) * xk / n) * params.mean(arm) +
         other * lambda * (xk / n) * params.mean(arm);
}

double death_rate(const ModelParams& params, const SystemState& state, int arm) {
  const double n = as_double(params.n_agents);
  const double xk = as_double(state.counts[static_cast<std::size_t>(arm)]);

  double inflow = 0.0;
  for (int j = 1; j <= params.n_arms; ++j) {
    if (j != arm)
      inflow += as_double(state.counts[static_cast<std::size_t>(j)]) / n * params.mean(j);
  }
  return xk * params.clock_rate * inflow;
}

double null_death_rate(const ModelParams& params, const SystemState& state) {
  const double n = as_double(params.n_agents);
  const double x0 = as_double(state.counts[0]);
  double sum = 0.0;
  for (int j = 1; j <= params.n_arms; ++j) {
    sum += (params.explore_prob / as_double(params.n_arms) +
            (1.0 - params.explore_prob) *
                as_double(state.counts[static_cast<std::size_t>(j)]) / n) *
           params.mean(j);
  }
  return x0 * params.clock_rate * sum;
}

std::vector<std::pair<TransitionDirection, double>> generator_row(
    const ModelParams& params, const SystemState& state) {
  const double n = as_double(params.n_agents);
  const double lambda = params.clock_rate;
  const double mu = params.explore_prob;
  const double big_k = as_double(params.n_arms);

  std::vector<std::pair<TransitionDirection, double>> row;
  // Fixed enumeration order (births, then swaps) keeps simulation runs a
  // deterministic function of the seed.
  const double x0 = as_double(state.counts[0]);
  for (int k = 1; k <= params.n_arms; ++k) {
    const double xk = as_double(state.counts[static_cast<std::size_t>(k)]);
    const double rate =
        x0 * lambda * (mu / big_k + (1.0 - mu) * xk / n) * params.mean(k);
    if (rate > 0.0) row.push_back({{0, k}, rate});
  }
  for (int from = 1; from <= params.n_arms; ++from) {
    const double x_from = as_double(state.counts[static_cast<std::size_t>(from)]);
    if (x_from == 0.0) continue;
    for (int to = 1; to <= params.n_arms; ++to) {
      if (to == from) continue;
      const double x_to = as_double(state.counts[static_cast<std::size_t>(to)]);
      const double rate = x_from * lambda * (x_to / n) * params.mean(to);
      if (rate > 0.0) row.push_back({{from, to}, rate});
    }
  }
  return row;
}

std::uint64_t default_event_cap(const ModelParams& params) {
  double min_nonzero = 1.0;
  for (double p : params.arm_means) {
    if (p > 0.0) min_nonzero = std::min(min_nonzero, p);
  }
  const double scale =
      std::max(1.0, 1.0 / (params.clock_rate * min_nonzero));
  const double cap = 50.0 * params.n_agents * params.n_arms * scale;
  return static_cast<std::uint64_t>(std::llround(cap));
}

SystemState EventTrace::replay() const {
  SystemState state = initial;
  for (const Event& ev : events) state = apply_direction(state, ev.dir);
  return state;
}

SystemState EventTrace::state_at(double t) const {
  SystemState state = initial;
  for (const Event& ev : events) {
    if (ev.time > t) break;
    state = apply_direction(state, ev.dir);
  }
  return state;
}

EventTrace simulate_ctmc(const ModelParams& params, Rng& rng, StopRule stop) {
  const std::uint64_t cap =
      stop.event_cap > 0 ? stop.event_cap : default_event_cap(params);

  EventTrace trace;
  trace.initial = initial_state(params);
  SystemState state = trace.initial;
  double t = 0.0;

  for (;;) {
    auto row = generator_row(params, state);
    double total = 0.0;
    for (const auto& [dir, rate] : row) total += rate;
    if (total == 0.0) {
      trace.terminal_reason = TerminalReason::Absorbed;
      trace.absorbed_class = state.argmax_class();
      return trace;
    }
    if (trace.events.size() >= cap) {
      trace.terminal_reason = TerminalReason::EventCap;
      return trace;
    }

    const double hold = rng.exponential(total);
    if (stop.time_limit && t + hold > *stop.time_limit) {
      trace.terminal_reason = TerminalReason::TimeLimit;
      return trace;
    }
    t += hold;

    double u = rng.uniform() * total;
    double acc = 0.0;
    TransitionDirection chosen = row.back().first;
    for (const auto& [dir, rate] : row) {
      acc += rate;
      if (u < acc) {
        chosen = dir;
        break;
      }
    }
    state = apply_direction(state, chosen);
    trace.events.push_back({t, chosen});
  }
}

EventTrace simulate_ctmc(const ModelParams& params, std::uint64_t seed, StopRule stop) {
  Rng rng(seed);
  return simulate_ctmc(params, rng, stop);
}

EventTrace simulate_agents(const ModelParams& params, Rng& rng, StopRule stop) {
  const std::uint64_t cap =
      stop.event_cap > 0 ? stop.event_cap : default_event_cap(params);
  const std::uint64_t n = static_cast<std::uint64_t>(params.n_agents);

  EventTrace trace;
  trace.initial = initial_state(params);
  SystemState state = trace.initial;
  std::vector<int> memory(static_cast<std::size_t>(params.n_agents), 0);
  double t = 0.0;

  for (;;) {
    // Total outflow equals the sum of birth rates over all arms (every swap
    // into arm k is part of arm k's birth aggregate).
    double total = 0.0;
    for (int k = 1; k <= params.n_arms; ++k) total += birth_rate(params, state, k);
    if (total == 0.0) {
      trace.terminal_reason = TerminalReason::Absorbed;
      trace.absorbed_class = state.argmax_class();
      return trace;
    }
    if (trace.events.size() >= cap) {
      trace.terminal_reason = TerminalReason::EventCap;
      return trace;
    }

    const double hold =
        rng.exponential(params.clock_rate * static_cast<double>(n));
    if (stop.time_limit && t + hold > *stop.time_limit) {
      trace.terminal_reason = TerminalReason::TimeLimit;
      return trace;
    }
    t += hold;

    const std::size_t agent = static_cast<std::size_t>(rng.uniform_int(n));
    const int m = memory[agent];
    int choice;
    if (m == 0 && rng.bernoulli(params.explore_prob)) {
      choice = 1 + static_cast<int>(rng.uniform_int(
                       static_cast<std::uint64_t>(params.n_arms)));
    } else {
      // Social sampling, self-inclusive.
      choice = memory[static_cast<std::size_t>(rng.uniform_int(n))];
    }
    if (choice == 0) continue;  // NULL arm, reward is always 0
    if (!rng.bernoulli(params.mean(choice))) continue;
    if (choice == m) continue;  // memory rewritten with the same value

    TransitionDirection dir{m, choice};
    state = apply_direction(state, dir);
    memory[agent] = choice;
    trace.events.push_back({t, dir});
  }
}

EventTrace simulate_agents(const ModelParams& params, std::uint64_t seed, StopRule stop) {
  Rng rng(seed);
  return simulate_agents(params, rng, stop);
}

}  // namespace colearn
