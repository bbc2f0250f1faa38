#include "doctest.h"

#include <cmath>

#include "colearn/bounds.hpp"

using namespace colearn;

namespace {

const ModelParams kRef = validate_params(200, 2, 1.0, 0.2, {0.8, 0.4});

ModelParams with_n(int n) { return validate_params(n, 2, 1.0, 0.2, {0.8, 0.4}); }

}  // namespace

TEST_CASE("consensus lower bound at a large population, frozen by hand") {
  // N=1000: wealth scale 0.2*0.8/(2e)*1000 = 29.43036..., so the bound is
  // 1 - 2^(-14.71518) - exp(-3.67879) = 0.974709...
  const BoundValue b = theorem1_bound(with_n(1000), 0.5);
  CHECK_FALSE(b.vacuous);
  CHECK(b.value == doctest::Approx(0.974709).epsilon(2e-5));
}

TEST_CASE("consensus lower bound goes vacuous at small populations") {
  const BoundValue b = theorem1_bound(with_n(10), 0.5);
  CHECK(b.vacuous);
  CHECK(b.value < 0.0);
}

TEST_CASE("consensus lower bound is monotone in the population size") {
  double prev = -1e9;
  for (int n : {50, 100, 200, 500, 1000, 2000, 5000}) {
    const double v = theorem1_bound(with_n(n), 0.5).value;
    CHECK(v > prev);
    prev = v;
  }
  CHECK(prev < 1.0);
}

TEST_CASE("delta domain is the open unit interval") {
  CHECK_THROWS_AS(theorem1_bound(kRef, 0.0), OutOfRange);
  CHECK_THROWS_AS(theorem1_bound(kRef, 1.0), OutOfRange);
  CHECK_THROWS_AS(theorem1_bound(kRef, -0.5), OutOfRange);
  CHECK_THROWS_AS(initial_wealth_bound(kRef, 1.5), OutOfRange);
  CHECK_NOTHROW(theorem1_bound(kRef, 0.999));
}

TEST_CASE("ruin bound and exact absorption probability, frozen by hand") {
  // p2/p1 = 0.5: bound 1 - 2^-3 = 0.875, exact (1-0.125)/(1-2^-10).
  CHECK(gambler_bound(kRef, 3) == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(gambler_exact(kRef, 3, 10) ==
        doctest::Approx(0.8758553274682307).epsilon(1e-13));
  CHECK(gambler_exact(kRef, 0, 10) == 0.0);
  CHECK(gambler_exact(kRef, 10, 10) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exact absorption probability dominates the closed-form bound") {
  for (int z0 = 1; z0 <= 10; ++z0) {
    CHECK(gambler_exact(kRef, z0, 10) >= gambler_bound(kRef, z0));
    if (z0 > 1) CHECK(gambler_exact(kRef, z0, 10) > gambler_exact(kRef, z0 - 1, 10));
  }
  // A longer track is harder to finish from the same start.
  CHECK(gambler_exact(kRef, 3, 20) < gambler_exact(kRef, 3, 10));
}

TEST_CASE("degenerate second-best arm is rejected") {
  const ModelParams degenerate = validate_params(10, 2, 1.0, 0.2, {0.8, 0.0});
  CHECK_THROWS_AS(theorem1_bound(degenerate, 0.5), SecondBestZero);
  CHECK_THROWS_AS(gambler_bound(degenerate, 3), SecondBestZero);
  CHECK_THROWS_AS(gambler_exact(degenerate, 3, 10), SecondBestZero);
}

TEST_CASE("initial wealth threshold and its probability, frozen by hand") {
  // N=200: scale = 5.886071..., threshold floor(0.5 * scale) = 2,
  // prob = 1 - exp(-scale/8) = 0.520877...
  const InitialWealth w = initial_wealth_bound(kRef, 0.5);
  CHECK(w.threshold == 2);
  CHECK(w.prob == doctest::Approx(0.520877).epsilon(2e-5));
  CHECK(initial_wealth_bound(with_n(1000), 0.5).threshold == 14);
}

TEST_CASE("concentration constants and their self-consistency") {
  for (double t_end : {1.0, 5.0, 30.0}) {
    for (double eps : {0.05, 0.1, 0.5}) {
      const Theorem2Constants c = theorem2_constants(kRef, t_end, eps);
      CHECK(c.c0 == 6.0);
      CHECK(c.c1 > 0.0);
      CHECK(c.rate == doctest::Approx(0.4).epsilon(1e-14));
      // The independently factored evaluation must agree almost exactly.
      const double other = deviation_constant(kRef, t_end, eps);
      CHECK(std::abs(c.c1 - other) <= 1e-14 * c.c1);
    }
  }
}

TEST_CASE("deviation threshold window is enforced") {
  CHECK_THROWS_AS(theorem2_constants(kRef, 1.0, 0.0), EpsOutOfWindow);
  CHECK_THROWS_AS(theorem2_constants(kRef, 1.0, -0.1), EpsOutOfWindow);
  CHECK_THROWS_AS(theorem2_constants(kRef, 1.0, 2000.0), EpsOutOfWindow);
  CHECK_NOTHROW(theorem2_constants(kRef, 1.0, 1000.0));
}

TEST_CASE("the report assembles every bound consistently") {
  const BoundsReport r = bounds_report(kRef, 0.5, 2, 30.0, 0.1);
  CHECK(r.theorem1_lower.value ==
        doctest::Approx(theorem1_bound(kRef, 0.5).value).epsilon(1e-15));
  CHECK(r.gambler_lower == doctest::Approx(gambler_bound(kRef, 2)).epsilon(1e-15));
  CHECK(r.gambler_exact_value ==
        doctest::Approx(gambler_exact(kRef, 2, 200)).epsilon(1e-15));
  CHECK(r.initial_wealth_threshold == 2);
  CHECK(r.c0 == 6.0);
  CHECK(std::abs(r.c1 - r.deviation_c) <= 1e-14 * r.c1);
  CHECK(r.rate == doctest::Approx(0.4));
  CHECK(r.t_bar == doctest::Approx(std::log(2.0) / 0.12).epsilon(1e-14));
}
