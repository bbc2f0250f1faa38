#pragma once

#include <cstdint>
#include <vector>

namespace colearn {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

// Normal interval mean +/- z * s / sqrt(n) from raw samples.
Interval normal_interval(const std::vector<double>& samples, double z);

double sample_mean(const std::vector<double>& samples);

// Two-sided standard normal quantiles used throughout.
inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

// Chi-square statistic for observed up/down counts against an expected
// up-probability; 1 degree of freedom.
double chi_square_binary(std::uint64_t up, std::uint64_t down, double p_up);

// 0.99 quantile of chi-square with 1 df.
inline constexpr double kChiSq1Df99 = 6.6348966010212145;

struct KsTest {
  double statistic = 0.0;   // sup |F_a - F_b|
  double threshold = 0.0;   // rejection threshold at the chosen level
  bool rejected = false;
};

// Two-sample Kolmogorov-Smirnov test. For integer-valued samples the test
// is conservative (true level below alpha).
KsTest ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha);

}  // namespace colearn
