#include "tailbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tailbound {

std::string_view to_string(Event e) {
  switch (e) {
    case Event::GeZero: return "ge-zero";
    case Event::GtZero: return "gt-zero";
    case Event::LeZero: return "le-zero";
    case Event::LtZero: return "lt-zero";
  }
  return "?";
}

Event event_from_string(std::string_view s) {
  if (s == "ge-zero" || s == "ge") return Event::GeZero;
  if (s == "gt-zero" || s == "gt") return Event::GtZero;
  if (s == "le-zero" || s == "le") return Event::LeZero;
  if (s == "lt-zero" || s == "lt") return Event::LtZero;
  throw std::invalid_argument("unknown event: " + std::string(s));
}

std::string_view to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::ClassicalFirstP: return "classical-first-p";
    case BoundMethod::FirstPOptimal: return "prop-2.1";
    case BoundMethod::FirstPExplicit: return "explicit-2.2";
    case BoundMethod::P2Closed: return "p2-closed";
    case BoundMethod::FourthPiecewise: return "fourth-piecewise";
    case BoundMethod::PthRemark: return "pth-remark";
    case BoundMethod::ClassicalFourth: return "classical-fourth";
    case BoundMethod::ClassicalPth: return "classical-pth";
  }
  return "?";
}

void validate(const MomentProfileFirstP& pr) {
  if (!(pr.p > 1.0) || !std::isfinite(pr.p))
    throw std::domain_error("p must lie in (1, inf)");
  if (!(pr.c1p > 0.0 && pr.c1p <= 1.0))
    throw std::domain_error("c1p must lie in (0,1]");
}

void validate(const MomentProfileFourth& pr) {
  if (!(pr.x >= 1.0) || !std::isfinite(pr.x))
    throw std::domain_error("c42-fourth must be at least 1");
}

void validate(const MomentProfilePth& pr) {
  if (!(pr.p > 2.0) || !std::isfinite(pr.p))
    throw std::domain_error("p must lie in (2, inf)");
  if (!(pr.r >= 1.0) || !std::isfinite(pr.r))
    throw std::domain_error("cp2 must be at least 1");
}

double psi(double p, double u) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("p must lie in (1, inf)");
  if (!(u >= 0.5 && u < 1.0))
    throw std::domain_error("u must lie in [1/2, 1)");
  const double a = 1.0 / (p - 1.0);
  // 1-u is exact for u in [1/2, 1] (Sterbenz), so the small tail is not lost.
  const double inner = std::pow(u, -a) + std::pow(1.0 - u, -a);
  return 2.0 * std::pow(inner, -(p - 1.0) / p);
}

double psi_inverse(double p, double c) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("p must lie in (1, inf)");
  if (!(c > 0.0 && c <= 1.0))
    throw std::domain_error("c must lie in (0,1]");
  if (c == 1.0) return 0.5;

  const double u_hi = 1.0 - 1e-15;
  if (c < psi(p, u_hi))
    throw std::domain_error(
        "c is below psi(p, 1-1e-15); the inverse is not representable in double precision");

  // psi is strictly decreasing with psi(1/2) = 1 >= c >= psi(u_hi).
  double lo = 0.5, hi = u_hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // one-ulp bracket reached
    if (psi(p, mid) >= c)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(psi(p, lo) - c) <= std::abs(psi(p, hi) - c) ? lo : hi;
}

namespace {

double clamp_half(double v) { return std::min(v, 0.5); }

}  // namespace

BoundReport bound_first_p(const MomentProfileFirstP& pr) {
  validate(pr);
  if (pr.c1p == 1.0)  // c1 = cp forces the symmetric two-point law
    return {0.5, BoundMethod::FirstPOptimal, Event::GtZero};
  const double u1 = psi_inverse(pr.p, pr.c1p);
  const double v = std::pow(pr.c1p / 2.0, pr.p / (pr.p - 1.0)) *
                   std::pow(u1, -1.0 / (pr.p - 1.0));
  return {clamp_half(v), BoundMethod::FirstPOptimal, Event::GtZero};
}

BoundReport bound_first_p_explicit(const MomentProfileFirstP& pr) {
  validate(pr);
  const double base = std::pow(pr.c1p / 2.0, pr.p / (pr.p - 1.0));
  // base < 1/2 for c1p <= 1, so 1/base - 1 > 1 and the bracket sits in (0, 1).
  const double t = std::pow(1.0 / base - 1.0, -(pr.p - 1.0));
  const double v = base * std::pow(1.0 - t, -1.0 / (pr.p - 1.0));
  return {clamp_half(v), BoundMethod::FirstPExplicit, Event::GtZero};
}

BoundReport bound_p2_closed(double c12) {
  if (!(c12 > 0.0 && c12 <= 1.0))
    throw std::domain_error("c1p must lie in (0,1]");
  const double v = 0.5 - 0.5 * std::sqrt((1.0 - c12) * (1.0 + c12));
  return {v, BoundMethod::P2Closed, Event::GtZero};
}

double fourth_branch_point() { return 1.5 * std::sqrt(3.0) - 1.5; }

BoundReport bound_fourth(const MomentProfileFourth& pr) {
  validate(pr);
  const double x = pr.x;
  double v;
  if (x < fourth_branch_point())
    v = 0.5 - 0.5 * std::sqrt((x - 1.0) / (x + 3.0));
  else
    v = (2.0 * std::sqrt(3.0) - 3.0) / x;
  return {v, BoundMethod::FourthPiecewise, Event::GtZero};
}

BoundReport bound_pth(const MomentProfilePth& pr) {
  validate(pr);
  const double factor = std::pow(3.0 - 4.0 / pr.p, -1.0 / (pr.p - 2.0)) + 1.0;
  const double v =
      0.25 * std::pow(pr.r, -2.0 * pr.p / (pr.p - 2.0)) * factor;
  return {clamp_half(v), BoundMethod::PthRemark, Event::GtZero};
}

BoundReport classical_bound(const MomentProfileFirstP& pr) {
  validate(pr);
  const double v = std::pow(pr.c1p / 2.0, pr.p / (pr.p - 1.0));
  return {v, BoundMethod::ClassicalFirstP, Event::GtZero};
}

BoundReport classical_bound(const MomentProfileFourth& pr) {
  validate(pr);
  return {(2.0 * std::sqrt(3.0) - 3.0) / pr.x, BoundMethod::ClassicalFourth,
          Event::GtZero};
}

BoundReport classical_bound(const MomentProfilePth& pr) {
  validate(pr);
  return {0.25 * std::pow(pr.r, -2.0 * pr.p / (pr.p - 2.0)),
          BoundMethod::ClassicalPth, Event::GtZero};
}

BoundReport best_bound(const ProfileSet& profiles) {
  std::vector<BoundReport> candidates;
  if (profiles.first_p) {
    candidates.push_back(classical_bound(*profiles.first_p));
    candidates.push_back(bound_first_p_explicit(*profiles.first_p));
    if (profiles.first_p->p == 2.0)
      candidates.push_back(bound_p2_closed(profiles.first_p->c1p));
    else
      candidates.push_back(bound_first_p(*profiles.first_p));
  }
  if (profiles.fourth) {
    candidates.push_back(classical_bound(*profiles.fourth));
    candidates.push_back(bound_fourth(*profiles.fourth));
  }
  if (profiles.pth) {
    candidates.push_back(classical_bound(*profiles.pth));
    candidates.push_back(bound_pth(*profiles.pth));
  }
  if (candidates.empty())
    throw std::invalid_argument("best_bound requires at least one profile");
  return *std::max_element(
      candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.value != b.value) return a.value < b.value;
        return static_cast<int>(a.method) > static_cast<int>(b.method);
      });
}

}  // namespace tailbound
