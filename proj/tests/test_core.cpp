#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fixiter/core.hpp"

using namespace fixiter;

TEST_CASE("Point invariants") {
  CHECK_THROWS_AS(Point(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(Point({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(Point({std::numeric_limits<double>::infinity()}), std::invalid_argument);
  CHECK(Point::scalar(2.5).as_scalar() == 2.5);
  CHECK_THROWS_AS(Point({1.0, 2.0}).as_scalar(), std::invalid_argument);
}

TEST_CASE("BoxDomain invariants and helpers") {
  CHECK_THROWS_AS(BoxDomain(Point::scalar(1.0), Point::scalar(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(BoxDomain(Point::scalar(0.0), Point({0.0, 1.0})), std::invalid_argument);
  const BoxDomain box = BoxDomain::interval(0.0, 4.0);
  CHECK(box.contains(Point::scalar(0.0)));
  CHECK(box.contains(Point::scalar(4.0)));
  CHECK_FALSE(box.contains(Point::scalar(4.1)));
  CHECK(box.contains(Point::scalar(4.0 + 1e-10), 1e-9));
  CHECK(box.clamp(Point::scalar(-1.0)).as_scalar() == 0.0);
  CHECK(box.clamp(Point::scalar(9.0)).as_scalar() == 4.0);
  CHECK(box.midpoint().as_scalar() == 2.0);
}

TEST_CASE("convex_combine endpoint identities") {
  CHECK(convex_combine(0.0, Point::scalar(1.99), Point::scalar(7.0)).as_scalar() == 1.99);
  CHECK(convex_combine(1.0, Point::scalar(0.0), Point::scalar(3.0)).as_scalar() == 3.0);
}

TEST_CASE("convex_combine interior value against direct arithmetic") {
  // y = T(1.99) for T(x) = (x+2)^(1/3); the combination must equal the
  // literally evaluated expression.
  const double x = 1.99;
  const double y = std::cbrt(x + 2.0);
  const double expect = (1.0 - 0.25) * x + 0.25 * y;
  CHECK(convex_combine(0.25, Point::scalar(x), Point::scalar(y)).as_scalar() == expect);
}

TEST_CASE("convex_combine errors") {
  CHECK_THROWS_AS(convex_combine(0.5, Point::scalar(0.0), Point({0.0, 1.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(convex_combine(-0.1, Point::scalar(0.0), Point::scalar(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(convex_combine(1.1, Point::scalar(0.0), Point::scalar(1.0)),
                  std::invalid_argument);
}

TEST_CASE("convex_combine stays within the segment in 1-D") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    const double x = coord(rng), y = coord(rng), t = unit(rng);
    const double r = convex_combine(t, Point::scalar(x), Point::scalar(y)).as_scalar();
    CHECK(r >= std::min(x, y));
    CHECK(r <= std::max(x, y));
  }
}

TEST_CASE("distance examples") {
  CHECK(distance(Point::scalar(0.0), Point::scalar(0.0)) == 0.0);
  CHECK(distance(Point({3.0, 4.0}), Point({0.0, 0.0})) == 5.0);
  // |1.99 - p| for the cube-root benchmark fixed point, by direct subtraction.
  const double p = 1.521379706804568;
  const double expect = std::abs(1.99 - p);
  CHECK(distance(Point::scalar(1.99), Point::scalar(p)) == expect);
  CHECK(std::abs(expect - 0.468620293195432) <= 1e-15);
  CHECK_THROWS_AS(distance(Point::scalar(0.0), Point({0.0, 1.0})), std::invalid_argument);
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  for (int i = 0; i < 5000; ++i) {
    const Point a({coord(rng), coord(rng), coord(rng)});
    const Point b({coord(rng), coord(rng), coord(rng)});
    const Point c({coord(rng), coord(rng), coord(rng)});
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
  }
}

TEST_CASE("schedule_at") {
  const ParamSchedule quarter = ParamSchedule::constant(0.25, 0.25);
  CHECK(schedule_at(quarter, 7) == std::pair{0.25, 0.25});
  const ParamSchedule degenerate = ParamSchedule::constant(1.0, 0.0);
  CHECK(schedule_at(degenerate, 0) == std::pair{1.0, 0.0});
  CHECK(schedule_at(degenerate, 123456) == std::pair{1.0, 0.0});

  const ParamSchedule tab = ParamSchedule::tabulated({{0.5, 0.5}, {0.6, 0.9}});
  CHECK(schedule_at(tab, 1) == std::pair{0.6, 0.9});
  CHECK_THROWS_AS(schedule_at(tab, 2), std::invalid_argument);

  const ParamSchedule h = ParamSchedule::formula(FormulaId::harmonic);
  CHECK(schedule_at(h, 0) == std::pair{1.0, 1.0});
  CHECK(schedule_at(h, 3) == std::pair{0.25, 0.25});
}

TEST_CASE("schedule_at is pure") {
  const ParamSchedule s = ParamSchedule::formula(FormulaId::inv_sqrt);
  for (std::size_t n : {0u, 1u, 5u, 1000u}) {
    const auto a = schedule_at(s, n);
    const auto b = schedule_at(s, n);
    CHECK(a == b);
  }
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(ParamSchedule::constant(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ParamSchedule::constant(0.5, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(ParamSchedule::tabulated({}), std::invalid_argument);
  CHECK_THROWS_AS(ParamSchedule::tabulated({{2.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("divergent sum certification") {
  CHECK(ParamSchedule::constant(0.25, 0.25).divergent_sum_certified());
  CHECK_FALSE(ParamSchedule::constant(0.0, 0.5).divergent_sum_certified());
  CHECK_FALSE(ParamSchedule::formula(FormulaId::harmonic).divergent_sum_certified());
  CHECK(ParamSchedule::formula(FormulaId::inv_sqrt).divergent_sum_certified());
  CHECK_FALSE(ParamSchedule::tabulated({{1.0, 1.0}}).divergent_sum_certified());
}
