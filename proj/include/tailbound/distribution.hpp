#pragma once

#include <string>
#include <vector>

#include "tailbound/bounds.hpp"

namespace tailbound {

struct Atom {
  double value;
  double prob;
};

/// Finite discrete law: strictly increasing atom values, strictly positive
/// probabilities summing to 1 within 1e-12.  Atoms closer than 1e-14 in value
/// are merged (probability-weighted) and zero-mass atoms are dropped.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }

  /// E xi^k
  double raw_moment(int k) const;
  /// E |xi|^p
  double abs_moment(double p) const;
  /// Exact mass of the event; atoms at exactly 0 count for ge/le only.
  double prob_event(Event e) const;

  /// {"atoms": [[value, prob], ...]}
  std::string to_json_string() const;
  static DiscreteDistribution from_json_string(const std::string& text);

 private:
  std::vector<Atom> atoms_;
};

/// Two-point law attaining the first/p-th moment bound: E xi = 0, E|xi| = c,
/// E|xi|^p = 1 and P(xi <= 0) equal to the bound value.
DiscreteDistribution extremal_first_p(double p, double c);

/// Two-point law attaining the fourth-moment bound on [1, branch point):
/// E xi = 0, E xi^2 = 1, E xi^4 = x and P(xi >= 0) = f(x).
DiscreteDistribution extremal_fourth_twopoint(double x);

struct ExtremalFamilyMember {
  DiscreteDistribution distribution;
  double epsilon;
  double target_fourth;  // the fourth moment approached as epsilon -> 0
};

/// Three-point family for x >= branch point: P(xi >= 0) = (2 sqrt 3 - 3)/c for
/// epsilon > 0, E xi = 0, E xi^2 = 1 exactly, and E xi^4 -> c as epsilon -> 0.
/// The middle atom sits at -epsilon; ordering x1 < -epsilon < 0 < x3 is
/// verified against the solved quadratic roots and violations are rejected.
ExtremalFamilyMember extremal_fourth_family(double c, double epsilon);

}  // namespace tailbound
