#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tailbound/bounds.hpp"
#include "tailbound/distribution.hpp"

namespace tailbound {

enum class MomentKind { Raw, Absolute };

struct MomentConstraint {
  MomentKind kind;
  double exponent;  // >= 1
  double target;
};

/// Feasible-set description for the minimization oracle: always carries the
/// centering constraint E xi = 0 plus a normalization moment.
class MomentConstraintSet {
 public:
  explicit MomentConstraintSet(std::vector<MomentConstraint> constraints);

  static MomentConstraintSet for_first_p(const MomentProfileFirstP& pr);
  static MomentConstraintSet for_fourth(const MomentProfileFourth& pr);
  static MomentConstraintSet for_pth(const MomentProfilePth& pr);

  const std::vector<MomentConstraint>& constraints() const { return constraints_; }

  /// Largest |x| an atom can occupy: mass >= mass_floor at x forces
  /// |x|^q <= target/mass_floor for the highest-exponent moment.  Capped at 100.
  double support_radius(double mass_floor = 1e-4) const;

  double evaluate(const MomentConstraint& c, double x) const;

 private:
  std::vector<MomentConstraint> constraints_;
};

struct SupportGrid {
  double xmin = -1.0;
  double xmax = 1.0;
  int points = 2001;
  bool includes_zero = true;

  static SupportGrid symmetric(double radius, int points);
  /// Strictly increasing grid values; contains 0 exactly when includes_zero.
  std::vector<double> materialize() const;
};

enum class OracleStatus { Optimal, Refined, Infeasible };

std::string_view to_string(OracleStatus s);

struct OracleResult {
  double min_prob = 1.0;  // vacuous when infeasible
  std::optional<DiscreteDistribution> witness;
  OracleStatus status = OracleStatus::Infeasible;
  std::vector<double> constraint_residuals;
  double slack = 0.0;  // the equality band half-width used for the run
};

/// Minimizes P(xi in event) over probability mass on the grid, each moment
/// equality relaxed to a band of half-width 1e-6*max(1,|target|).  One
/// refinement pass re-grids 100x finer around the incumbent support.  When
/// `cap_highest_as_inequality` is set, the highest-exponent constraint becomes
/// one-sided (<= target), confirming the minimum sits at the cap.
OracleResult min_prob_lp(const MomentConstraintSet& cs, const SupportGrid& grid,
                         Event event, bool refine = true,
                         bool cap_highest_as_inequality = false);

/// Low-dimensional search: atom positions on a coarse grid, probabilities
/// solved linearly from the leading moment equations, remaining residuals
/// penalized, then per-coordinate golden-section descent to step < 1e-10.
OracleResult min_prob_parametric(const MomentConstraintSet& cs, int atom_count,
                                 Event event);

enum class CertifyVerdict { Certified, BoundTooHigh, OracleLoose };

std::string_view to_string(CertifyVerdict v);

/// Compares an oracle minimum against a claimed lower bound.
///   certified:      |min - bound| <= tol
///   bound-too-high: min < bound - tol  (would falsify the bound)
///   oracle-loose:   min > bound + tol
CertifyVerdict certify(const BoundReport& bound, const OracleResult& oracle, double tol);

}  // namespace tailbound
