#include "colearn/bounds.hpp"

#include <cmath>

#include "colearn/meanfield.hpp"

namespace colearn {

namespace {

// Euler's number at full double precision, not a display rounding.
constexpr double kE = 2.718281828459045235360287471;

void require_second_best(const ModelParams& params) {
  if (params.second_mean() == 0.0)
    throw SecondBestZero("the second-largest arm mean is zero");
}

void require_delta(double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw OutOfRange("delta must lie in (0, 1)");
}

}  // namespace

BoundValue theorem1_bound(const ModelParams& params, double delta) {
  require_second_best(params);
  require_delta(delta);
  const double p1 = params.best_mean();
  const double p2 = params.second_mean();
  const double base = p1 / p2;
  const double wealth_scale = params.explore_prob * p1 /
                              (static_cast<double>(params.n_arms) * kE) *
                              static_cast<double>(params.n_agents);
  const double ruin_term = std::pow(base, -(1.0 - delta) * wealth_scale);
  const double chernoff_term = std::exp(-wealth_scale * delta * delta / 2.0);
  const double value = 1.0 - ruin_term - chernoff_term;
  return {value, value <= 0.0};
}

double gambler_bound(const ModelParams& params, int z0) {
  require_second_best(params);
  return 1.0 - std::pow(params.best_mean() / params.second_mean(),
                        -static_cast<double>(z0));
}

double gambler_exact(const ModelParams& params, int z0, int n) {
  require_second_best(params);
  // q/p for the walk with up-probability p1/(p1+p2) is p2/p1.
  const double ratio = params.second_mean() / params.best_mean();
  if (ratio == 1.0) return static_cast<double>(z0) / static_cast<double>(n);
  return (1.0 - std::pow(ratio, z0)) / (1.0 - std::pow(ratio, n));
}

InitialWealth initial_wealth_bound(const ModelParams& params, double delta) {
  require_delta(delta);
  const double scale = params.explore_prob * params.best_mean() /
                       (static_cast<double>(params.n_arms) * kE) *
                       static_cast<double>(params.n_agents);
  InitialWealth result;
  result.threshold = static_cast<int>(std::floor((1.0 - delta) * scale));
  result.prob = 1.0 - std::exp(-scale * delta * delta / 2.0);
  return result;
}

Theorem2Constants theorem2_constants(const ModelParams& params, double t_end,
                                     double eps_prime) {
  const double lambda = params.clock_rate;
  const double k1 = static_cast<double>(params.n_arms) + 1.0;
  const double lip = lambda * (5.0 + std::sqrt(static_cast<double>(params.n_arms)));
  const double window = lambda * t_end * std::sqrt(k1) * std::exp(lip * t_end);
  if (!(eps_prime > 0.0) || !(eps_prime < window))
    throw EpsOutOfWindow("eps' must lie in (0, lambda*T*sqrt(K+1)*exp(lip*T))");

  Theorem2Constants result;
  result.c0 = 2.0 * k1;
  result.c1 = (3.0 - kE) / (9.0 * t_end * lambda) * eps_prime * eps_prime /
              (k1 * std::exp(2.0 * lip * t_end));
  const ConvergenceRate rate = convergence_rate(params);
  result.rate = rate.rate;
  result.t_bar = rate.t_bar(0.5);
  return result;
}

double deviation_constant(const ModelParams& params, double t_end,
                          double eps_prime) {
  const double lambda = params.clock_rate;
  const double k1 = static_cast<double>(params.n_arms) + 1.0;
  const double lip = lambda * (5.0 + std::sqrt(static_cast<double>(params.n_arms)));
  return (3.0 - kE) * eps_prime * eps_prime / (9.0 * t_end * lambda * k1) *
         std::exp(-2.0 * lip * t_end);
}

BoundsReport bounds_report(const ModelParams& params, double delta, int z0,
                           double t_end, double eps_prime) {
  BoundsReport report;
  report.theorem1_lower = theorem1_bound(params, delta);
  report.gambler_lower = gambler_bound(params, z0);
  report.gambler_exact_value = gambler_exact(params, z0, params.n_agents);
  const InitialWealth wealth = initial_wealth_bound(params, delta);
  report.initial_wealth_threshold = wealth.threshold;
  report.initial_wealth_prob = wealth.prob;
  const Theorem2Constants t2 = theorem2_constants(params, t_end, eps_prime);
  report.c0 = t2.c0;
  report.c1 = t2.c1;
  report.rate = t2.rate;
  report.t_bar = t2.t_bar;
  report.deviation_c = deviation_constant(params, t_end, eps_prime);
  return report;
}

}  // namespace colearn
