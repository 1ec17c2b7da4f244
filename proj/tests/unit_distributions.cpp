#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tailbound/distribution.hpp"
#include "tailbound/rng.hpp"

using namespace tailbound;

TEST_CASE("construction sorts, merges and validates") {
  DiscreteDistribution d({{1.0, 0.5}, {-1.0, 0.25}, {-1.0, 0.25}});
  REQUIRE(d.atoms().size() == 2);
  CHECK(d.atoms()[0].value == -1.0);
  CHECK(d.atoms()[0].prob == 0.5);

  // zero-mass atoms are dropped
  DiscreteDistribution e({{-1.0, 0.5}, {0.0, 0.0}, {1.0, 0.5}});
  CHECK(e.atoms().size() == 2);

  // values within 1e-14 merge, clearly separated ones stay distinct
  DiscreteDistribution merged({{1.0, 0.5}, {1.0 + 1e-15, 0.3}, {-1.0, 0.2}});
  CHECK(merged.atoms().size() == 2);
  DiscreteDistribution apart({{1.0, 0.5}, {1.0 + 1e-13, 0.3}, {-1.0, 0.2}});
  CHECK(apart.atoms().size() == 3);

  CHECK_THROWS_AS(DiscreteDistribution({{0.0, 0.7}}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDistribution({{0.0, -0.5}, {1.0, 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDistribution({}), std::invalid_argument);
}

TEST_CASE("moments of small laws") {
  DiscreteDistribution rademacher({{-1.0, 0.5}, {1.0, 0.5}});
  CHECK(rademacher.raw_moment(1) == 0.0);
  CHECK(rademacher.raw_moment(4) == 1.0);
  CHECK(rademacher.abs_moment(3.0) == 1.0);

  DiscreteDistribution skew({{-2.0, 0.2}, {0.5, 0.8}});
  CHECK(std::abs(skew.raw_moment(2) - 1.0) < 1e-15);
  CHECK(std::abs(skew.abs_moment(1.0) - 0.8) < 1e-15);
  CHECK(std::abs(skew.abs_moment(2.0) - 1.0) < 1e-15);
  CHECK(skew.prob_event(Event::LeZero) == 0.2);
}

TEST_CASE("prob_event counts zero atoms for ge/le only") {
  DiscreteDistribution d({{-1.0, 0.25}, {0.0, 0.25}, {1.0, 0.5}});
  CHECK(d.prob_event(Event::GtZero) == 0.5);
  CHECK(d.prob_event(Event::GeZero) == 0.75);
  CHECK(d.prob_event(Event::LtZero) == 0.25);
  CHECK(d.prob_event(Event::LeZero) == 0.5);
}

TEST_CASE("json round trip") {
  DiscreteDistribution d({{-2.0, 0.2}, {0.5, 0.8}});
  const auto back = DiscreteDistribution::from_json_string(d.to_json_string());
  REQUIRE(back.atoms().size() == 2);
  CHECK(back.atoms()[0].value == -2.0);
  CHECK(back.atoms()[1].prob == 0.8);
}

TEST_CASE("extremal_first_p reference cases") {
  const DiscreteDistribution d = extremal_first_p(2.0, 0.8);
  REQUIRE(d.atoms().size() == 2);
  CHECK(std::abs(d.atoms()[0].value - (-2.0)) < 1e-12);
  CHECK(std::abs(d.atoms()[0].prob - 0.2) < 1e-12);
  CHECK(std::abs(d.atoms()[1].value - 0.5) < 1e-12);
  CHECK(std::abs(d.raw_moment(1)) < 1e-15);
  CHECK(std::abs(d.abs_moment(1.0) - 0.8) < 1e-15);
  CHECK(std::abs(d.abs_moment(2.0) - 1.0) < 1e-12);

  const DiscreteDistribution sym = extremal_first_p(3.7, 1.0);
  REQUIRE(sym.atoms().size() == 2);
  CHECK(sym.atoms()[0].value == -1.0);
  CHECK(sym.atoms()[1].value == 1.0);

  const DiscreteDistribution c3 = extremal_first_p(3.0, 0.5);
  CHECK(std::abs(c3.abs_moment(3.0) - 1.0) < 1e-10);
}

TEST_CASE("extremal_first_p attains the bound over random profiles") {
  Xoshiro256pp rng(20240601);
  for (int i = 0; i < 30; ++i) {
    const double p = 1.2 + 6.8 * rng.uniform01();
    const double c = 0.05 + 0.95 * rng.uniform01();
    const double mu = bound_first_p({p, c}).value;
    const DiscreteDistribution d = extremal_first_p(p, c);
    CHECK(std::abs(d.raw_moment(1)) < 1e-12);
    CHECK(std::abs(d.abs_moment(1.0) - c) < 1e-12);
    CHECK(std::abs(d.abs_moment(p) - 1.0) < 1e-10);
    CHECK(std::abs(d.prob_event(Event::LeZero) - mu) < 1e-12);
  }
}

TEST_CASE("extremal_fourth_twopoint") {
  const DiscreteDistribution sym = extremal_fourth_twopoint(1.0);
  REQUIRE(sym.atoms().size() == 2);
  CHECK(sym.atoms()[0].value == -1.0);
  CHECK(sym.prob_event(Event::GeZero) == 0.5);

  const DiscreteDistribution d = extremal_fourth_twopoint(1.05);
  CHECK(std::abs(d.prob_event(Event::GeZero) - bound_fourth({1.05}).value) < 1e-12);
  CHECK(std::abs(d.prob_event(Event::GeZero) - 0.44444444444444444) < 1e-12);

  const DiscreteDistribution e = extremal_fourth_twopoint(1.09);
  CHECK(std::abs(e.raw_moment(4) - 1.09) < 1e-10);
  CHECK(std::abs(e.raw_moment(2) - 1.0) < 1e-12);
  CHECK(std::abs(e.raw_moment(1)) < 1e-12);

  CHECK_THROWS_AS(extremal_fourth_twopoint(0.99), std::domain_error);
  CHECK_THROWS_AS(extremal_fourth_twopoint(fourth_branch_point()), std::domain_error);
}

TEST_CASE("extremal_fourth_family at epsilon zero matches the closed forms") {
  const double s3 = std::sqrt(3.0);
  const double c = 2.0;
  const ExtremalFamilyMember m = extremal_fourth_family(c, 0.0);
  const double x1 = -(1.0 - s3 / 3.0) / std::sqrt(2.0 - s3) * std::sqrt(c);
  const double x3 = (s3 / 3.0) / std::sqrt(2.0 - s3) * std::sqrt(c);
  REQUIRE(m.distribution.atoms().size() == 3);
  CHECK(std::abs(m.distribution.atoms()[0].value - x1) < 1e-12);
  CHECK(m.distribution.atoms()[1].value == 0.0);
  CHECK(std::abs(m.distribution.atoms()[2].value - x3) < 1e-12);
  CHECK(std::abs(m.distribution.raw_moment(1)) < 1e-12);
  CHECK(std::abs(m.distribution.raw_moment(2) - 1.0) < 1e-12);
  CHECK(std::abs(m.distribution.raw_moment(4) - c) < 1e-10);
}

TEST_CASE("extremal_fourth_family for positive epsilon") {
  const double c = 2.0;
  const ExtremalFamilyMember m = extremal_fourth_family(c, 1e-4);
  CHECK(m.distribution.prob_event(Event::GeZero) == (2.0 * std::sqrt(3.0) - 3.0) / c);
  CHECK(std::abs(m.distribution.raw_moment(4) - c) < 1e-3);
  CHECK(std::abs(m.distribution.raw_moment(1)) < 1e-12);
  CHECK(std::abs(m.distribution.raw_moment(2) - 1.0) < 1e-12);

  // deviation of the fourth moment shrinks monotonically with epsilon
  double prev = 1e9;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double dev = std::abs(extremal_fourth_family(c, eps).distribution.raw_moment(4) - c);
    CHECK(dev < prev);
    prev = dev;
  }
}

TEST_CASE("extremal_fourth_family edge handling") {
  // at the branch point the middle atom has zero mass and is dropped
  const ExtremalFamilyMember m = extremal_fourth_family(fourth_branch_point(), 1e-4);
  CHECK(m.distribution.atoms().size() == 2);
  CHECK_THROWS_AS(extremal_fourth_family(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(extremal_fourth_family(2.0, 10.0), std::invalid_argument);
}

TEST_CASE("witnesses never undercut applicable bounds") {
  Xoshiro256pp rng(77);
  for (int i = 0; i < 20; ++i) {
    const double x = 1.0 + 6.0 * rng.uniform01();
    const double bound = bound_fourth({x}).value;
    const DiscreteDistribution d =
        x < fourth_branch_point() ? extremal_fourth_twopoint(x)
                                  : extremal_fourth_family(x, 1e-5).distribution;
    CHECK(d.prob_event(Event::GeZero) >= bound - 1e-12);
  }
}
