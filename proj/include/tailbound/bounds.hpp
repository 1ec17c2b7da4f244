#pragma once

#include <optional>
#include <string_view>

namespace tailbound {

/// Event a probability statement refers to.
enum class Event { GeZero, GtZero, LeZero, LtZero };

std::string_view to_string(Event e);
Event event_from_string(std::string_view s);

/// Moment data for the (first, p-th) moment pair: c1p = E|xi| / (E|xi|^p)^{1/p}.
struct MomentProfileFirstP {
  double p;    // exponent, > 1
  double c1p;  // moment ratio, in (0, 1]
};

/// Moment data for the fourth/second pair: x = E xi^4 / (E xi^2)^2, >= 1.
struct MomentProfileFourth {
  double x;
};

/// Moment data for the (p-th, second) pair with p > 2: r = (E|xi|^p)^{1/p} / (E xi^2)^{1/2}.
struct MomentProfilePth {
  double p;  // exponent, > 2
  double r;  // moment ratio, >= 1
};

void validate(const MomentProfileFirstP& pr);
void validate(const MomentProfileFourth& pr);
void validate(const MomentProfilePth& pr);

enum class BoundMethod {
  ClassicalFirstP,  // (c/2)^{p/(p-1)}
  FirstPOptimal,    // the sharp psi-inverse bound
  FirstPExplicit,   // explicit over-estimate of the above
  P2Closed,         // closed form at p = 2
  FourthPiecewise,  // piecewise f of the fourth-moment ratio
  PthRemark,        // improved-constant p-th moment bound
  ClassicalFourth,  // (2 sqrt 3 - 3)/x
  ClassicalPth,     // r^{-2p/(p-2)}/4
};

/// Wire tag, stable across CLI/JSON output.
std::string_view to_string(BoundMethod m);

struct BoundReport {
  double value;        // lower bound for the event probability, in (0, 1/2]
  BoundMethod method;
  Event event;         // all bounds here hold for the strict event gt-zero
};

/// The strictly decreasing function psi(u) = 2 (u^{-1/(p-1)} + (1-u)^{-1/(p-1)})^{-(p-1)/p}
/// on [1/2, 1), with psi(1/2) = 1 and psi -> 0 as u -> 1.
double psi(double p, double u);

/// Inverse of psi on (0, 1]; bisects down to a one-ulp bracket and returns the
/// endpoint whose image is closest to c.  Values of c below psi(p, 1 - 1e-15)
/// are rejected: the root is not representable without overflow in (1-u)^{-1/(p-1)}.
double psi_inverse(double p, double c);

BoundReport bound_first_p(const MomentProfileFirstP& pr);
BoundReport bound_first_p_explicit(const MomentProfileFirstP& pr);
BoundReport bound_p2_closed(double c12);
BoundReport bound_fourth(const MomentProfileFourth& pr);
BoundReport bound_pth(const MomentProfilePth& pr);

BoundReport classical_bound(const MomentProfileFirstP& pr);
BoundReport classical_bound(const MomentProfileFourth& pr);
BoundReport classical_bound(const MomentProfilePth& pr);

/// Splice point of the piecewise fourth-moment bound: 3*sqrt(3)/2 - 3/2.
double fourth_branch_point();

struct ProfileSet {
  std::optional<MomentProfileFirstP> first_p;
  std::optional<MomentProfileFourth> fourth;
  std::optional<MomentProfilePth> pth;
};

/// Largest applicable bound across all supplied profiles.  Ties broken by
/// BoundMethod declaration order.  For p = 2 first-p profiles the closed form
/// stands in for the psi-inverse route (they agree to 1e-12).
BoundReport best_bound(const ProfileSet& profiles);

}  // namespace tailbound
