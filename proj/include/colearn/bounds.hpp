#pragma once

#include <stdexcept>

#include "colearn/core.hpp"

namespace colearn {

struct SecondBestZero : std::domain_error {
  using std::domain_error::domain_error;
};
struct EpsOutOfWindow : std::domain_error {
  using std::domain_error::domain_error;
};

// A closed-form bound together with its vacuity flag; a lower bound <= 0
// holds trivially and is reported as vacuous rather than clamped.
struct BoundValue {
  double value = 0.0;
  bool vacuous = false;
};

// Lower bound on the probability that the whole population ends up on the
// best arm: 1 - (p1/p2)^(-(1-delta) mu p1 N / (K e)) - exp(-(mu p1 / (K e)) delta^2 N / 2).
BoundValue theorem1_bound(const ModelParams& params, double delta);

// Success probability of the biased gambler's ruin from initial wealth z0:
// closed-form lower bound 1 - (p1/p2)^(-z0) ...
double gambler_bound(const ModelParams& params, int z0);
// ... and the exact absorbing-walk identity (1-(q/p)^z0)/(1-(q/p)^N).
double gambler_exact(const ModelParams& params, int z0, int n);

struct InitialWealth {
  int threshold = 0;   // floor((1-delta) mu p1 N / (K e))
  double prob = 0.0;   // 1 - exp(-(mu p1 / (K e)) delta^2 N / 2)
};

InitialWealth initial_wealth_bound(const ModelParams& params, double delta);

struct Theorem2Constants {
  double c0 = 0.0;     // 2(K+1)
  double c1 = 0.0;     // concentration exponent constant, equals C(eps')
  double rate = 0.0;   // R
  double t_bar = 0.0;  // warm-up time at c = 0.5
};

Theorem2Constants theorem2_constants(const ModelParams& params, double t_end,
                                     double eps_prime);

// Independent evaluation of C(eps'), kept as a second code path for the
// self-consistency check against c1.
double deviation_constant(const ModelParams& params, double t_end,
                          double eps_prime);

struct BoundsReport {
  BoundValue theorem1_lower;
  double gambler_lower = 0.0;
  double gambler_exact_value = 0.0;
  int initial_wealth_threshold = 0;
  double initial_wealth_prob = 0.0;
  double t_bar = 0.0;
  double rate = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double deviation_c = 0.0;
};

BoundsReport bounds_report(const ModelParams& params, double delta, int z0,
                           double t_end, double eps_prime);

}  // namespace colearn
