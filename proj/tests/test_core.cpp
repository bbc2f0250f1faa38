#include "doctest.h"

#include "colearn/core.hpp"

using namespace colearn;

TEST_CASE("validate_params accepts the reference configuration") {
  const ModelParams p = validate_params(200, 2, 1.0, 0.2, {0.8, 0.4});
  CHECK(p.n_agents == 200);
  CHECK(p.n_arms == 2);
  CHECK(p.best_arm == 1);
  CHECK(p.best_mean() == 0.8);
  CHECK(p.second_mean() == 0.4);
}

TEST_CASE("best arm is located by value, not position") {
  const ModelParams p = validate_params(50, 3, 2.0, 0.5, {0.1, 0.9, 0.3});
  CHECK(p.best_arm == 2);
  CHECK(p.best_mean() == 0.9);
  CHECK(p.second_mean() == 0.3);
}

TEST_CASE("single arm has second mean zero") {
  const ModelParams p = validate_params(10, 1, 1.0, 0.5, {0.7});
  CHECK(p.second_mean() == 0.0);
}

TEST_CASE("validate_params rejects bad inputs") {
  CHECK_THROWS_AS(validate_params(0, 2, 1.0, 0.2, {0.8, 0.4}), OutOfRange);
  CHECK_THROWS_AS(validate_params(10, 0, 1.0, 0.2, {}), OutOfRange);
  CHECK_THROWS_AS(validate_params(10, 2, 0.0, 0.2, {0.8, 0.4}), OutOfRange);
  CHECK_THROWS_AS(validate_params(10, 2, -1.0, 0.2, {0.8, 0.4}), OutOfRange);
  CHECK_THROWS_AS(validate_params(10, 2, 1.0, 0.0, {0.8, 0.4}), ZeroExplore);
  CHECK_THROWS_AS(validate_params(10, 2, 1.0, 1.5, {0.8, 0.4}), OutOfRange);
  CHECK_THROWS_AS(validate_params(10, 2, 1.0, 0.2, {0.8, 1.4}), OutOfRange);
  CHECK_THROWS_AS(validate_params(10, 2, 1.0, 0.2, {0.8, -0.1}), OutOfRange);
  CHECK_THROWS_AS(validate_params(10, 2, 1.0, 0.2, {0.8}), ParamError);
  CHECK_THROWS_AS(validate_params(10, 2, 1.0, 0.2, {0.6, 0.6}), NonUniqueBestArm);
  CHECK_THROWS_AS(validate_params(10, 3, 1.0, 0.2, {0.2, 0.6, 0.6}),
                  NonUniqueBestArm);
}

TEST_CASE("mu equal to one is allowed, N equal to one is allowed") {
  CHECK_NOTHROW(validate_params(10, 2, 1.0, 1.0, {0.8, 0.4}));
  CHECK_NOTHROW(validate_params(1, 2, 1.0, 0.2, {0.8, 0.4}));
}

TEST_CASE("initial state puts everyone in the no-preference class") {
  const ModelParams p = validate_params(7, 3, 1.0, 0.2, {0.8, 0.4, 0.2});
  const SystemState s = initial_state(p);
  CHECK(s.counts == std::vector<int>{7, 0, 0, 0});
  CHECK(s.population() == 7);
  CHECK_FALSE(s.is_unanimous(1));
  CHECK(s.argmax_class() == 0);
}

TEST_CASE("unanimity detection") {
  SystemState s{{0, 5, 0}};
  CHECK(s.is_unanimous(1));
  CHECK_FALSE(s.is_unanimous(2));
  SystemState t{{1, 4, 0}};
  CHECK_FALSE(t.is_unanimous(1));
}

TEST_CASE("apply_direction moves one agent and preserves population") {
  SystemState s{{3, 2, 1}};
  const SystemState birth = apply_direction(s, {0, 2});
  CHECK(birth.counts == std::vector<int>{2, 2, 2});
  const SystemState swap = apply_direction(s, {1, 2});
  CHECK(swap.counts == std::vector<int>{3, 1, 2});
  CHECK(swap.population() == 6);
}

TEST_CASE("apply_direction from an empty class throws") {
  SystemState s{{0, 3, 0}};
  CHECK_THROWS_AS(apply_direction(s, {0, 1}), NegativeCount);
  CHECK_THROWS_AS(apply_direction(s, {2, 1}), NegativeCount);
}

TEST_CASE("scaling lands on the simplex") {
  SystemState s{{1, 2, 5}};
  const ScaledState x = scale(s);
  CHECK(x.point[0] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(x.point[2] == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(simplex_violation(x) <= 1e-15);
}

TEST_CASE("simplex_violation flags mass and sign errors") {
  CHECK(simplex_violation({{0.5, 0.6}}) == doctest::Approx(0.1));
  CHECK(simplex_violation({{1.2, -0.2}}) == doctest::Approx(0.2));
}
