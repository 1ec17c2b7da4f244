#include "tailbound/simplex.hpp"

#include <cmath>

#include "simplex_impl.hpp"

namespace tailbound {

LpResult solve_lp_equality(const std::vector<double>& a, const std::vector<double>& b,
                           const std::vector<double>& c, int m, int n) {
  constexpr double kFeasTol = 1e-7;
  constexpr double kPivotTol = 1e-10;

  detail::Tableau t(m, n + m);
  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j)
      t.at(i, j) = sign * a[static_cast<std::size_t>(i) * n + j];
    t.at(i, n + i) = 1.0;  // artificial
    t.rhs(i) = sign * b[i];
    t.set_basis(i, n + i);
  }

  // Phase 1: minimize the artificial sum, expressed through the basis.
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += t.at(i, j);
    t.obj(j) = -s;
  }
  double rhs_sum = 0.0;
  for (int i = 0; i < m; ++i) rhs_sum += t.rhs(i);
  t.obj_rhs() = -rhs_sum;

  t.iterate(n + m);
  if (-t.obj_rhs() > kFeasTol) return {LpStatus::Infeasible, 0.0, {}};

  // Drive leftover artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (t.basis(i) < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j)
      if (std::abs(t.at(i, j)) > kPivotTol) {
        col = j;
        break;
      }
    if (col >= 0) t.pivot(i, col);
    // else: redundant row; the artificial stays basic at value ~0
  }

  // Phase 2 objective.
  for (int j = 0; j < n + m; ++j) t.obj(j) = j < n ? c[j] : 0.0;
  t.obj_rhs() = 0.0;
  for (int i = 0; i < m; ++i) {
    const int bj = t.basis(i);
    if (bj >= n) continue;
    const double cb = c[bj];
    if (cb == 0.0) continue;
    for (int j = 0; j < n + m; ++j) t.obj(j) -= cb * t.at(i, j);
    t.obj_rhs() -= cb * t.rhs(i);
  }
  t.iterate(n);  // artificials may not re-enter

  LpResult res;
  res.status = LpStatus::Optimal;
  res.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (t.basis(i) < n) res.x[t.basis(i)] = std::max(0.0, t.rhs(i));
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

}  // namespace tailbound
