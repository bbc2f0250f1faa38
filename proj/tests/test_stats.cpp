#include "doctest.h"

#include <cmath>
#include <vector>

#include "colearn/stats.hpp"

using namespace colearn;

TEST_CASE("Wilson interval for 8/10 at 95%, frozen by hand") {
  const Interval ci = wilson_interval(8, 10, kZ95);
  CHECK(ci.low == doctest::Approx(0.4901624715366418).epsilon(1e-12));
  CHECK(ci.high == doctest::Approx(0.9433178485456247).epsilon(1e-12));
}

TEST_CASE("Wilson interval basic properties") {
  for (std::uint64_t s : {0ULL, 1ULL, 5ULL, 9ULL, 10ULL}) {
    const Interval ci = wilson_interval(s, 10, kZ95);
    const double p_hat = static_cast<double>(s) / 10.0;
    CHECK(ci.low >= 0.0);
    CHECK(ci.high <= 1.0);
    // At the endpoints the clipped bound equals p-hat up to rounding.
    CHECK(ci.low <= p_hat + 1e-12);
    CHECK(ci.high >= p_hat - 1e-12);
  }
  // Mirror symmetry in successes vs failures.
  const Interval a = wilson_interval(2, 10, kZ95);
  const Interval b = wilson_interval(8, 10, kZ95);
  CHECK(a.low == doctest::Approx(1.0 - b.high).epsilon(1e-12));
  CHECK(a.high == doctest::Approx(1.0 - b.low).epsilon(1e-12));
  // Wider z, wider interval.
  const Interval wide = wilson_interval(8, 10, kZ99);
  CHECK(wide.low < b.low);
  CHECK(wide.high > b.high);
}

TEST_CASE("Wilson interval shrinks with the sample size") {
  double prev_width = 1.0;
  for (std::uint64_t n : {10ULL, 100ULL, 1000ULL, 10000ULL}) {
    const Interval ci = wilson_interval(n * 8 / 10, n, kZ95);
    const double width = ci.high - ci.low;
    CHECK(width < prev_width);
    prev_width = width;
  }
}

TEST_CASE("normal interval for a tiny sample, frozen by hand") {
  // mean 3, se sqrt(2.5/5) = 0.70711, z = 2.
  const Interval ci = normal_interval({1, 2, 3, 4, 5}, 2.0);
  CHECK(sample_mean({1, 2, 3, 4, 5}) == 3.0);
  CHECK(ci.low == doctest::Approx(3.0 - 2.0 * std::sqrt(0.5)).epsilon(1e-12));
  CHECK(ci.high == doctest::Approx(3.0 + 2.0 * std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("normal interval degenerates gracefully") {
  const Interval ci = normal_interval({2.5}, 2.0);
  CHECK(ci.low == 2.5);
  CHECK(ci.high == 2.5);
  const Interval constant = normal_interval({1.0, 1.0, 1.0}, 2.0);
  CHECK(constant.low == 1.0);
  CHECK(constant.high == 1.0);
}

TEST_CASE("chi-square statistic for up/down counts") {
  CHECK(chi_square_binary(50, 50, 0.5) == 0.0);
  // (60-50)^2/50 + (40-50)^2/50 = 4.
  CHECK(chi_square_binary(60, 40, 0.5) == doctest::Approx(4.0).epsilon(1e-14));
  // 2/3 target hit exactly.
  CHECK(chi_square_binary(200, 100, 2.0 / 3.0) ==
        doctest::Approx(0.0).epsilon(1e-20));
  CHECK(chi_square_binary(60, 40, 0.5) < kChiSq1Df99);
  CHECK(chi_square_binary(80, 20, 0.5) > kChiSq1Df99);
}

TEST_CASE("KS statistic on interleaved two-point samples, frozen by hand") {
  const KsTest t = ks_two_sample({0.0, 1.0}, {0.5, 1.5}, 0.01);
  CHECK(t.statistic == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_FALSE(t.rejected);  // threshold is above 1 for n = 2
}

TEST_CASE("KS accepts identical samples and rejects disjoint ones") {
  std::vector<double> a, b, c;
  for (int i = 0; i < 100; ++i) {
    a.push_back(i);
    b.push_back(i);
    c.push_back(i + 1000);
  }
  const KsTest same = ks_two_sample(a, b, 0.01);
  CHECK(same.statistic == 0.0);
  CHECK_FALSE(same.rejected);

  const KsTest apart = ks_two_sample(a, c, 0.01);
  CHECK(apart.statistic == 1.0);
  CHECK(apart.rejected);
}

TEST_CASE("KS handles ties across the two samples") {
  // Heavily tied integer data; the scan must advance both sides together.
  std::vector<double> a(50, 1.0), b(50, 1.0);
  a.resize(100, 2.0);
  b.resize(100, 2.0);
  const KsTest t = ks_two_sample(a, b, 0.01);
  CHECK(t.statistic == 0.0);
  CHECK_FALSE(t.rejected);
}
