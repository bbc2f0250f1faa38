#include "colearn/meanfield.hpp"

#include <cmath>
#include <string>

namespace colearn {

namespace {

// Per-direction intensities and their assembly, without the simplex guard
// (RK4 stage points may sit slightly off the simplex).
void drift_raw(const ModelParams& params, const std::vector<double>& x,
               std::vector<double>& out,
               std::vector<std::pair<TransitionDirection, double>>* per_direction) {
  const int k_arms = params.n_arms;
  const double lambda = params.clock_rate;
  const double mu = params.explore_prob;
  const double big_k = static_cast<double>(k_arms);

  out.assign(x.size(), 0.0);
  for (int k = 1; k <= k_arms; ++k) {
    const double f = lambda * x[0] *
                     (mu / big_k + (1.0 - mu) * x[static_cast<std::size_t>(k)]) *
                     params.mean(k);
    out[0] -= f;
    out[static_cast<std::size_t>(k)] += f;
    if (per_direction) per_direction->push_back({{0, k}, f});
  }
  for (int from = 1; from <= k_arms; ++from) {
    for (int to = 1; to <= k_arms; ++to) {
      if (to == from) continue;
      const double f = lambda * x[static_cast<std::size_t>(from)] *
                       x[static_cast<std::size_t>(to)] * params.mean(to);
      out[static_cast<std::size_t>(from)] -= f;
      out[static_cast<std::size_t>(to)] += f;
      if (per_direction) per_direction->push_back({{from, to}, f});
    }
  }
}

}  // namespace

DriftEval drift(const ModelParams& params, const ScaledState& x) {
  if (simplex_violation(x) > 1e-6)
    throw OffSimplex("input is off the simplex by " +
                     std::to_string(simplex_violation(x)));
  DriftEval eval;
  eval.input = x;
  drift_raw(params, x.point, eval.output, &eval.per_direction);
  return eval;
}

std::vector<double> drift_componentwise(const ModelParams& params,
                                        const ScaledState& x) {
  const int k_arms = params.n_arms;
  const double lambda = params.clock_rate;
  const double mu = params.explore_prob;
  const double big_k = static_cast<double>(k_arms);
  const auto& y = x.point;

  std::vector<double> out(y.size(), 0.0);
  double uniform_sum = 0.0;
  double social_sum = 0.0;
  for (int k = 1; k <= k_arms; ++k) {
    uniform_sum += params.mean(k);
    social_sum += params.mean(k) * y[static_cast<std::size_t>(k)];
  }
  out[0] = -y[0] * lambda * (mu / big_k) * uniform_sum -
           y[0] * lambda * (1.0 - mu) * social_sum;
  for (int k = 1; k <= k_arms; ++k) {
    const double yk = y[static_cast<std::size_t>(k)];
    double gap = 0.0;
    for (int j = 1; j <= k_arms; ++j)
      gap += (params.mean(k) - params.mean(j)) * y[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(k)] =
        y[0] * lambda * (mu / big_k) * params.mean(k) +
        yk * lambda * ((1.0 - mu) * params.mean(k) * y[0] + gap);
  }
  return out;
}

OdeTrajectory integrate(const ModelParams& params, double t_end, double step) {
  if (!(t_end > 0.0)) throw OutOfRange("integration horizon must be positive");
  if (!(step > 0.0) || step > t_end)
    throw OutOfRange("step must lie in (0, horizon]");

  const std::size_t dim = static_cast<std::size_t>(params.n_arms) + 1;
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

  double h = step;
  for (int attempt = 0; attempt <= 20; ++attempt, h *= 0.5) {
    OdeTrajectory traj;
    traj.step_size = h;
    const auto n_steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-12));
    traj.times.reserve(n_steps + 1);
    traj.points.reserve(n_steps + 1);

    ScaledState y;
    y.point.assign(dim, 0.0);
    y.point[0] = 1.0;
    traj.times.push_back(0.0);
    traj.points.push_back(y);

    bool ok = true;
    double t = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
      const double dt = std::min(h, t_end - t);
      drift_raw(params, y.point, k1, nullptr);
      for (std::size_t d = 0; d < dim; ++d) tmp[d] = y.point[d] + 0.5 * dt * k1[d];
      drift_raw(params, tmp, k2, nullptr);
      for (std::size_t d = 0; d < dim; ++d) tmp[d] = y.point[d] + 0.5 * dt * k2[d];
      drift_raw(params, tmp, k3, nullptr);
      for (std::size_t d = 0; d < dim; ++d) tmp[d] = y.point[d] + dt * k3[d];
      drift_raw(params, tmp, k4, nullptr);
      for (std::size_t d = 0; d < dim; ++d)
        y.point[d] += dt / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
      t = (i + 1 == n_steps) ? t_end : t + dt;

      // Monitored, never projected: drift off the simplex means the step
      // is too coarse (or the field is wrong).
      if (simplex_violation(y) > 1e-6) {
        ok = false;
        break;
      }
      traj.times.push_back(t);
      traj.points.push_back(y);
    }
    if (ok) return traj;
  }
  throw StepTooLarge("integration left the simplex even after 20 halvings");
}

double y0_envelope(const ModelParams& params, double t) {
  double sum = 0.0;
  for (double p : params.arm_means) sum += p;
  return std::exp(-params.clock_rate * params.explore_prob /
                  static_cast<double>(params.n_arms) * sum * t);
}

double ConvergenceRate::t_bar(double c) const {
  return std::log(1.0 / c) / warmup_denom;
}

ConvergenceRate convergence_rate(const ModelParams& params) {
  const double lambda = params.clock_rate;
  const double mu = params.explore_prob;
  const double big_k = static_cast<double>(params.n_arms);
  const double p1 = params.best_mean();
  const double p2 = params.second_mean();
  double sum = 0.0;
  for (double p : params.arm_means) sum += p;

  ConvergenceRate result;
  result.rate = std::min(lambda * (p1 - p2),
                         lambda * (mu / big_k + (1.0 - mu)) * p1);
  result.warmup_denom = lambda * (mu / big_k) * sum;
  return result;
}

LipschitzCheck lipschitz_check(const ModelParams& params, std::uint64_t n_pairs,
                               std::uint64_t seed) {
  const std::size_t dim = static_cast<std::size_t>(params.n_arms) + 1;
  Rng rng(seed);

  auto sample_simplex = [&](std::vector<double>& x) {
    double sum = 0.0;
    for (auto& v : x) {
      v = rng.exponential(1.0);
      sum += v;
    }
    for (auto& v : x) v /= sum;
  };

  LipschitzCheck result;
  result.bound = params.clock_rate * (5.0 + std::sqrt(static_cast<double>(params.n_arms)));

  std::vector<double> x(dim), y(dim), fx(dim), fy(dim);
  for (std::uint64_t i = 0; i < n_pairs; ++i) {
    sample_simplex(x);
    sample_simplex(y);
    double dist2 = 0.0;
    for (std::size_t d = 0; d < dim; ++d) dist2 += (x[d] - y[d]) * (x[d] - y[d]);
    if (dist2 == 0.0) continue;
    drift_raw(params, x, fx, nullptr);
    drift_raw(params, y, fy, nullptr);
    double diff2 = 0.0;
    for (std::size_t d = 0; d < dim; ++d) diff2 += (fx[d] - fy[d]) * (fx[d] - fy[d]);
    result.empirical_sup = std::max(result.empirical_sup, std::sqrt(diff2 / dist2));
    ++result.pairs_used;
  }
  return result;
}

}  // namespace colearn
