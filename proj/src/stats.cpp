#include "colearn/stats.hpp"

#include <algorithm>
#include <cmath>

namespace colearn {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double sample_mean(const std::vector<double>& samples) {
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum / static_cast<double>(samples.size());
}

Interval normal_interval(const std::vector<double>& samples, double z) {
  const double n = static_cast<double>(samples.size());
  const double mean = sample_mean(samples);
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double se = n > 1.0 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return {mean - z * se, mean + z * se};
}

double chi_square_binary(std::uint64_t up, std::uint64_t down, double p_up) {
  const double n = static_cast<double>(up + down);
  const double exp_up = n * p_up;
  const double exp_down = n * (1.0 - p_up);
  const double du = static_cast<double>(up) - exp_up;
  const double dd = static_cast<double>(down) - exp_down;
  return du * du / exp_up + dd * dd / exp_down;
}

KsTest ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());

  double stat = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    stat = std::max(stat,
                    std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }

  KsTest result;
  result.statistic = stat;
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  result.threshold = c * std::sqrt((na + nb) / (na * nb));
  result.rejected = stat > result.threshold;
  return result;
}

}  // namespace colearn
