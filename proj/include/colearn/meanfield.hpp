#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "colearn/core.hpp"
#include "colearn/rng.hpp"

namespace colearn {

struct OffSimplex : std::domain_error {
  using std::domain_error::domain_error;
};
struct StepTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Drift of the scaled process at a simplex point: per-direction intensities
// and their assembled vector field (tangent to the simplex).
struct DriftEval {
  ScaledState input;
  std::vector<double> output;  // sum over directions of dir * intensity
  std::vector<std::pair<TransitionDirection, double>> per_direction;
};

DriftEval drift(const ModelParams& params, const ScaledState& x);

// Componentwise closed form of the same vector field, used as the second
// route for the assembly consistency check.
std::vector<double> drift_componentwise(const ModelParams& params,
                                        const ScaledState& x);

struct OdeTrajectory {
  std::vector<double> times;
  std::vector<ScaledState> points;
  double step_size = 0.0;

  const ScaledState& at_end() const { return points.back(); }
};

// Classical fixed-step RK4 from [1, 0, ..., 0] over [0, T]. If the grid
// leaves the simplex by more than 1e-6 the step is halved and the whole
// integration restarted, up to 20 times.
OdeTrajectory integrate(const ModelParams& params, double t_end, double step);

// Closed-form upper envelope exp(-lambda*(mu/K)*sum(p) * t) for Y_0(t).
double y0_envelope(const ModelParams& params, double t);

struct ConvergenceRate {
  double rate = 0.0;           // R
  double warmup_denom = 0.0;   // lambda*(mu/K)*sum(p)

  double t_bar(double c) const;  // warm-up time, c in (0, 1]
};

ConvergenceRate convergence_rate(const ModelParams& params);

struct LipschitzCheck {
  double empirical_sup = 0.0;
  double bound = 0.0;  // lambda * (5 + sqrt(K))
  std::uint64_t pairs_used = 0;
};

// Samples uniform pairs on the simplex and maximizes the difference
// quotient of the drift; coincident pairs are skipped.
LipschitzCheck lipschitz_check(const ModelParams& params, std::uint64_t n_pairs,
                               std::uint64_t seed);

}  // namespace colearn
