#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tailbound/bounds.hpp"

using namespace tailbound;

namespace {
const double kPGrid[] = {1.2, 1.5, 2.0, 3.0, 7.0, 10.0};
const double kCGrid[] = {0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 0.99, 1.0};
}  // namespace

TEST_CASE("psi at one half is 1 for every p") {
  for (double p : kPGrid) CHECK(std::abs(psi(p, 0.5) - 1.0) < 1e-14);
}

TEST_CASE("psi specializes to 2 sqrt(u(1-u)) at p = 2") {
  CHECK(std::abs(psi(2.0, 0.9) - 0.6) < 1e-15);
  for (double u : {0.5, 0.6, 0.75, 0.9, 0.99})
    CHECK(std::abs(psi(2.0, u) - 2.0 * std::sqrt(u * (1.0 - u))) < 1e-15);
}

TEST_CASE("psi decreases strictly to 0") {
  for (double p : kPGrid) {
    double prev = psi(p, 0.5);
    for (double u : {0.6, 0.9, 0.99, 0.999, 0.999999}) {
      const double v = psi(p, u);
      CHECK(v < prev);
      prev = v;
    }
    // tail behaves like 2 (1-u)^{1/p}
    CHECK(prev < 2.0 * std::pow(1e-6, 1.0 / p) * 1.01);
  }
}

TEST_CASE("psi domain errors") {
  CHECK_THROWS_AS(psi(2.0, 0.49), std::domain_error);
  CHECK_THROWS_AS(psi(2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(psi(1.0, 0.7), std::domain_error);
  CHECK_THROWS_AS(psi(0.5, 0.7), std::domain_error);
}

TEST_CASE("psi_inverse boundary and closed form") {
  for (double p : kPGrid) CHECK(psi_inverse(p, 1.0) == 0.5);
  CHECK(std::abs(psi_inverse(2.0, 0.6) - 0.9) < 1e-12);
  for (double c : kCGrid) {
    const double expect = 0.5 + 0.5 * std::sqrt(1.0 - c * c);
    CHECK(std::abs(psi_inverse(2.0, c) - expect) < 1e-12);
  }
}

TEST_CASE("psi round trip") {
  for (double p : {1.5, 3.0})
    for (double c : {0.1, 0.5, 0.99})
      CHECK(std::abs(psi(p, psi_inverse(p, c)) - c) < 1e-10);
  for (double c : {0.5, 0.99})
    CHECK(std::abs(psi(7.0, psi_inverse(7.0, c)) - c) < 1e-10);
  // At p = 7, c = 0.1 the root u sits ~1e-9 below 1; one ulp of u moves
  // psi by ~2e-9, so the representable optimum is above 1e-10.
  CHECK(std::abs(psi(7.0, psi_inverse(7.0, 0.1)) - 0.1) < 1e-9);
}

TEST_CASE("psi_inverse domain errors") {
  CHECK_THROWS_AS(psi_inverse(2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(psi_inverse(2.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(psi_inverse(7.0, 0.01), std::domain_error);  // below psi(7, 1-1e-15)
}

TEST_CASE("bound_first_p reference values") {
  CHECK(std::abs(bound_first_p({2.0, 0.8}).value - 0.2) < 1e-12);
  for (double p : {1.5, 2.0, 4.0}) CHECK(bound_first_p({p, 1.0}).value == 0.5);
  const double v = bound_first_p({4.0, 0.5}).value;
  CHECK(v > std::pow(0.25, 4.0 / 3.0));
  CHECK(v <= 0.5);
  CHECK(bound_first_p({2.0, 0.8}).method == BoundMethod::FirstPOptimal);
  CHECK(bound_first_p({2.0, 0.8}).event == Event::GtZero);
}

TEST_CASE("bound_first_p_explicit reference values") {
  CHECK(std::abs(bound_first_p_explicit({2.0, 1.0}).value - 0.375) < 1e-15);
  CHECK(bound_first_p_explicit({2.0, 0.8}).value <= 0.2 + 1e-15);
  // frozen from a 50-digit evaluation of the closed formula
  CHECK(std::abs(bound_first_p_explicit({3.0, 0.5}).value - 0.126295371385231) < 1e-12);
  CHECK(bound_first_p_explicit({3.0, 0.5}).value >= std::pow(0.25, 1.5));
}

TEST_CASE("bound_p2_closed reference values") {
  CHECK(bound_p2_closed(1.0).value == 0.5);
  CHECK(std::abs(bound_p2_closed(0.8).value - 0.2) < 1e-15);
  CHECK(std::abs(bound_p2_closed(0.6).value - 0.1) < 1e-15);
  CHECK_THROWS_AS(bound_p2_closed(0.0), std::domain_error);
  CHECK_THROWS_AS(bound_p2_closed(1.5), std::domain_error);
}

TEST_CASE("bound_first_p agrees with the p = 2 closed form") {
  for (int i = 1; i <= 100; ++i) {
    const double c = i / 100.0;
    CHECK(std::abs(bound_first_p({2.0, c}).value - bound_p2_closed(c).value) < 1e-12);
  }
}

TEST_CASE("dominance chain classical <= explicit <= optimal") {
  for (double p : kPGrid) {
    for (double c : kCGrid) {
      const double lo = classical_bound(MomentProfileFirstP{p, c}).value;
      const double mid = bound_first_p_explicit({p, c}).value;
      const double hi = bound_first_p({p, c}).value;
      CHECK(lo <= mid);
      CHECK(mid <= hi + 1e-15);
      // Strictness is only observable where the gap clears double resolution:
      // with t = ((c/2)^{-p/(p-1)} - 1)^{-(p-1)}, the classical/explicit gap
      // is ~t/(p-1) relative and the explicit/optimal gap ~t^{2+1/(p-1)}/(p-1).
      const double a = 1.0 / (p - 1.0);
      const double t = std::pow(1.0 / std::pow(c / 2.0, p / (p - 1.0)) - 1.0, -(p - 1.0));
      if (a * t > 1e-13) CHECK(lo < mid);
      if (c < 1.0 && a * std::pow(t, 2.0 + a) > 1e-13) CHECK(mid < hi);
    }
  }
}

TEST_CASE("bound_fourth branches") {
  const double x0 = fourth_branch_point();
  CHECK(std::abs(x0 - 1.0980762113533159) < 1e-15);
  CHECK(bound_fourth({1.0}).value == 0.5);
  CHECK(std::abs(bound_fourth({3.0}).value - (2.0 * std::sqrt(3.0) - 3.0) / 3.0) < 1e-15);
  // continuity at the splice
  const double left = 0.5 - 0.5 * std::sqrt((x0 - 1.0) / (x0 + 3.0));
  const double right = (2.0 * std::sqrt(3.0) - 3.0) / x0;
  CHECK(std::abs(left - right) < 1e-12);
  CHECK(std::abs(bound_fourth({x0}).value - right) < 1e-15);
  CHECK_THROWS_AS(bound_fourth({0.9}), std::domain_error);

  double prev = 0.5 + 1e-15;
  for (double x : {1.0, 1.05, x0, 1.5, 3.0, 10.0, 100.0}) {
    const double v = bound_fourth({x}).value;
    CHECK(v < prev);
    prev = v;
  }
  CHECK(bound_fourth({1e6}).value < 1e-5);
}

TEST_CASE("bound_pth reference values") {
  CHECK(std::abs(bound_pth({4.0, 1.0}).value - 0.25 * (std::pow(2.0, -0.5) + 1.0)) < 1e-14);
  // (3 - 4/p)^{1/(p-2)} decreases to e as p decreases to 2
  const double factor = bound_pth({2.001, 1.0}).value * 4.0 - 1.0;
  CHECK(std::abs(factor - std::exp(-1.0)) < 1e-3);
  for (double p : {2.5, 3.0, 4.0, 8.0}) {
    for (double r : {1.0, 1.3, 2.0}) {
      const double ratio = bound_pth({p, r}).value / classical_bound(MomentProfilePth{p, r}).value;
      CHECK(ratio > 1.0);
      CHECK(std::abs(ratio - (std::pow(3.0 - 4.0 / p, -1.0 / (p - 2.0)) + 1.0)) < 1e-12);
      CHECK(bound_pth({p, r}).value >= (std::exp(-1.0) + 1.0) / 4.0 *
                                           std::pow(r, -2.0 * p / (p - 2.0)) - 1e-15);
    }
  }
  CHECK(bound_pth({4.0, 1.0}).value < bound_fourth({1.0}).value);
  CHECK_THROWS_AS(bound_pth({2.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(bound_pth({4.0, 0.9}), std::domain_error);
}

TEST_CASE("classical bounds") {
  CHECK(std::abs(classical_bound(MomentProfileFirstP{2.0, 1.0}).value - 0.25) < 1e-15);
  CHECK(std::abs(classical_bound(MomentProfileFourth{1.0}).value -
                 (2.0 * std::sqrt(3.0) - 3.0)) < 1e-15);
  CHECK(std::abs(classical_bound(MomentProfilePth{4.0, 1.0}).value - 0.25) < 1e-15);
}

TEST_CASE("bound_fourth meets the classical constant exactly past the splice") {
  const double x0 = fourth_branch_point();
  for (double x : {1.0, 1.02, 1.05, 1.09}) {
    CHECK(x < x0);
    CHECK(bound_fourth({x}).value > classical_bound(MomentProfileFourth{x}).value);
  }
  for (double x : {x0, 1.2, 3.0, 40.0})
    CHECK(bound_fourth({x}).value == classical_bound(MomentProfileFourth{x}).value);
}

TEST_CASE("best_bound selection") {
  ProfileSet only_p2;
  only_p2.first_p = MomentProfileFirstP{2.0, 0.8};
  const BoundReport b1 = best_bound(only_p2);
  CHECK(std::abs(b1.value - 0.2) < 1e-12);
  CHECK(b1.method == BoundMethod::P2Closed);

  ProfileSet pair;
  pair.fourth = MomentProfileFourth{3.0};
  pair.pth = MomentProfilePth{4.0, std::pow(3.0, 0.25)};
  const BoundReport b2 = best_bound(pair);
  CHECK(std::abs(b2.value - 0.15470053837925153) < 1e-12);
  CHECK(b2.method == BoundMethod::FourthPiecewise);

  ProfileSet fourth_one;
  fourth_one.fourth = MomentProfileFourth{1.0};
  CHECK(best_bound(fourth_one).value == 0.5);

  CHECK_THROWS_AS(best_bound(ProfileSet{}), std::invalid_argument);
}

TEST_CASE("all bound values lie in (0, 1/2]") {
  for (double p : kPGrid)
    for (double c : kCGrid)
      for (const BoundReport& r : {bound_first_p({p, c}), bound_first_p_explicit({p, c}),
                                   classical_bound(MomentProfileFirstP{p, c})}) {
        CHECK(r.value > 0.0);
        CHECK(r.value <= 0.5);
      }
  for (double x : {1.0, 1.05, 2.0, 17.0})
    for (const BoundReport& r :
         {bound_fourth({x}), classical_bound(MomentProfileFourth{x})}) {
      CHECK(r.value > 0.0);
      CHECK(r.value <= 0.5);
    }
}
