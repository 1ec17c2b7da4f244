#pragma once

#include <vector>

namespace tailbound {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

/// Dense two-phase primal simplex for
///   min c'x  s.t.  A x = b,  x >= 0,
/// with A given row-major (m rows, n columns).  Bland's rule; sized for the
/// small-row problems here (m <= ~10, n up to a few tens of thousands).
LpResult solve_lp_equality(const std::vector<double>& a, const std::vector<double>& b,
                           const std::vector<double>& c, int m, int n);

}  // namespace tailbound
