#include "tailbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tailbound/simplex.hpp"

namespace tailbound {

std::string_view to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::Optimal: return "optimal";
    case OracleStatus::Refined: return "refined";
    case OracleStatus::Infeasible: return "infeasible";
  }
  return "?";
}

std::string_view to_string(CertifyVerdict v) {
  switch (v) {
    case CertifyVerdict::Certified: return "certified";
    case CertifyVerdict::BoundTooHigh: return "bound-too-high";
    case CertifyVerdict::OracleLoose: return "oracle-loose";
  }
  return "?";
}

MomentConstraintSet::MomentConstraintSet(std::vector<MomentConstraint> constraints)
    : constraints_(std::move(constraints)) {
  int centering = 0;
  bool normalization = false;
  for (const auto& c : constraints_) {
    if (!std::isfinite(c.target))
      throw std::invalid_argument("constraint targets must be finite");
    if (!(c.exponent >= 1.0))
      throw std::invalid_argument("constraint exponents must be >= 1");
    if (c.kind == MomentKind::Raw && c.exponent != std::floor(c.exponent))
      throw std::invalid_argument("raw moments require integer exponents");
    if (c.kind == MomentKind::Raw && c.exponent == 1.0 && c.target == 0.0)
      ++centering;
    if (c.exponent > 1.0 && c.target > 0.0) normalization = true;
  }
  if (centering != 1)
    throw std::invalid_argument("exactly one centering constraint (raw, 1, 0) required");
  if (!normalization)
    throw std::invalid_argument("a normalization moment with positive target is required");
}

MomentConstraintSet MomentConstraintSet::for_first_p(const MomentProfileFirstP& pr) {
  validate(pr);
  return MomentConstraintSet({{MomentKind::Raw, 1.0, 0.0},
                              {MomentKind::Absolute, 1.0, pr.c1p},
                              {MomentKind::Absolute, pr.p, 1.0}});
}

MomentConstraintSet MomentConstraintSet::for_fourth(const MomentProfileFourth& pr) {
  validate(pr);
  return MomentConstraintSet({{MomentKind::Raw, 1.0, 0.0},
                              {MomentKind::Raw, 2.0, 1.0},
                              {MomentKind::Raw, 4.0, pr.x}});
}

MomentConstraintSet MomentConstraintSet::for_pth(const MomentProfilePth& pr) {
  validate(pr);
  return MomentConstraintSet({{MomentKind::Raw, 1.0, 0.0},
                              {MomentKind::Raw, 2.0, 1.0},
                              {MomentKind::Absolute, pr.p, std::pow(pr.r, pr.p)}});
}

double MomentConstraintSet::support_radius(double mass_floor) const {
  double best_q = 0.0, best_t = 0.0;
  for (const auto& c : constraints_) {
    if (c.exponent > best_q && c.target > 0.0) {
      best_q = c.exponent;
      best_t = c.target;
    }
  }
  if (best_q <= 1.0) return 100.0;
  return std::min(100.0, std::pow(best_t / mass_floor, 1.0 / best_q));
}

double MomentConstraintSet::evaluate(const MomentConstraint& c, double x) const {
  if (c.kind == MomentKind::Absolute) return std::pow(std::abs(x), c.exponent);
  return std::pow(x, static_cast<int>(c.exponent));
}

SupportGrid SupportGrid::symmetric(double radius, int points) {
  return {-radius, radius, points, true};
}

std::vector<double> SupportGrid::materialize() const {
  if (points < 3) throw std::invalid_argument("grid needs at least 3 points");
  if (!(xmin < 0.0 && xmax > 0.0))
    throw std::invalid_argument("grid must straddle 0 (xmin < 0 < xmax)");
  std::vector<double> xs(points);
  const double h = (xmax - xmin) / (points - 1);
  for (int i = 0; i < points; ++i) xs[i] = xmin + h * i;
  xs.back() = xmax;
  if (includes_zero) {
    auto closest = std::min_element(xs.begin(), xs.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    });
    *closest = 0.0;
  }
  return xs;
}

namespace {

constexpr double kRelSlack = 1e-6;

bool in_event(double x, Event e) {
  switch (e) {
    case Event::GeZero: return x >= 0.0;
    case Event::GtZero: return x > 0.0;
    case Event::LeZero: return x <= 0.0;
    case Event::LtZero: return x < 0.0;
  }
  return false;
}

struct GridLpOutcome {
  bool feasible = false;
  double objective = 1.0;
  std::vector<double> atom_x;
  std::vector<double> atom_p;
};

GridLpOutcome run_grid_lp(const MomentConstraintSet& cs, const std::vector<double>& xs,
                          Event event, bool cap_highest_as_inequality) {
  const auto& cons = cs.constraints();
  const int k = static_cast<int>(cons.size());
  const int n_grid = static_cast<int>(xs.size());

  int cap_index = -1;
  if (cap_highest_as_inequality) {
    double best_q = -1.0;
    for (int j = 0; j < k; ++j)
      if (cons[j].exponent > best_q) {
        best_q = cons[j].exponent;
        cap_index = j;
      }
  }

  // Rows: sum(mu) = 1, then one or two band rows per moment constraint, each
  // with its own slack column.  Rows are equilibrated by their largest entry.
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<int> slack_sign;  // +1: <= row, -1: >= row, 0: none

  rows.emplace_back(n_grid, 1.0);
  rhs.push_back(1.0);
  slack_sign.push_back(0);

  for (int j = 0; j < k; ++j) {
    std::vector<double> g(n_grid);
    for (int i = 0; i < n_grid; ++i) g[i] = cs.evaluate(cons[j], xs[i]);
    const double delta = kRelSlack * std::max(1.0, std::abs(cons[j].target));
    rows.push_back(g);
    rhs.push_back(cons[j].target + delta);
    slack_sign.push_back(+1);
    if (j != cap_index) {
      rows.push_back(g);
      rhs.push_back(cons[j].target - delta);
      slack_sign.push_back(-1);
    }
  }

  const int m = static_cast<int>(rows.size());
  const int n_slack = m - 1;
  const int n_total = n_grid + n_slack;
  std::vector<double> a(static_cast<std::size_t>(m) * n_total, 0.0);
  std::vector<double> b(m);
  int slack_col = 0;
  for (int i = 0; i < m; ++i) {
    double scale = std::abs(rhs[i]);
    for (double v : rows[i]) scale = std::max(scale, std::abs(v));
    const double inv = scale > 0.0 ? 1.0 / scale : 1.0;
    for (int j = 0; j < n_grid; ++j)
      a[static_cast<std::size_t>(i) * n_total + j] = rows[i][j] * inv;
    if (slack_sign[i] != 0)
      a[static_cast<std::size_t>(i) * n_total + n_grid + slack_col++] =
          slack_sign[i] * inv;
    b[i] = rhs[i] * inv;
  }

  std::vector<double> c_obj(n_total, 0.0);
  for (int j = 0; j < n_grid; ++j) c_obj[j] = in_event(xs[j], event) ? 1.0 : 0.0;

  const LpResult lp = solve_lp_equality(a, b, c_obj, m, n_total);
  GridLpOutcome out;
  if (lp.status != LpStatus::Optimal) return out;
  out.feasible = true;
  out.objective = lp.objective;
  for (int j = 0; j < n_grid; ++j)
    if (lp.x[j] > 1e-12) {
      out.atom_x.push_back(xs[j]);
      out.atom_p.push_back(lp.x[j]);
    }
  return out;
}

OracleResult package_result(const MomentConstraintSet& cs, const GridLpOutcome& out,
                            OracleStatus status) {
  OracleResult res;
  res.slack = kRelSlack;
  if (!out.feasible) {
    res.status = OracleStatus::Infeasible;
    res.min_prob = 1.0;
    return res;
  }
  double total = 0.0;
  for (double p : out.atom_p) total += p;
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < out.atom_x.size(); ++i)
    atoms.push_back({out.atom_x[i], out.atom_p[i] / total});
  res.witness = DiscreteDistribution(std::move(atoms));
  res.status = status;
  res.min_prob = out.objective;
  for (const auto& c : cs.constraints()) {
    double m = 0.0;
    for (const Atom& a : res.witness->atoms()) m += a.prob * cs.evaluate(c, a.value);
    res.constraint_residuals.push_back(m - c.target);
  }
  return res;
}

}  // namespace

OracleResult min_prob_lp(const MomentConstraintSet& cs, const SupportGrid& grid,
                         Event event, bool refine, bool cap_highest_as_inequality) {
  const std::vector<double> xs = grid.materialize();
  GridLpOutcome base = run_grid_lp(cs, xs, event, cap_highest_as_inequality);
  if (!base.feasible) return package_result(cs, base, OracleStatus::Infeasible);
  if (!refine) return package_result(cs, base, OracleStatus::Optimal);

  // Local re-grid, 100x finer around each incumbent atom, on top of the
  // original grid so the refined feasible set only grows.
  const double h = (grid.xmax - grid.xmin) / (grid.points - 1);
  std::vector<double> fine(xs);
  for (double w : base.atom_x) {
    const double lo = std::max(grid.xmin, w - h);
    const double hi = std::min(grid.xmax, w + h);
    for (int i = 0; i <= 200; ++i) fine.push_back(lo + (hi - lo) * i / 200.0);
  }
  if (grid.includes_zero) fine.push_back(0.0);
  std::sort(fine.begin(), fine.end());
  fine.erase(std::unique(fine.begin(), fine.end()), fine.end());

  GridLpOutcome refined = run_grid_lp(cs, fine, event, cap_highest_as_inequality);
  if (refined.feasible && refined.objective <= base.objective)
    return package_result(cs, refined, OracleStatus::Refined);
  return package_result(cs, base, OracleStatus::Refined);
}

namespace {

// ---- parametric search -----------------------------------------------------

struct ParametricEval {
  bool valid = false;
  double event_mass = 1.0;
  double merit = std::numeric_limits<double>::infinity();
  std::vector<double> probs;
  std::vector<double> residuals;  // all constraints, signed
};

// Probabilities from the square system {sum = 1} + leading constraints, then
// residuals of the remaining ones.
ParametricEval evaluate_positions(const MomentConstraintSet& cs,
                                  const std::vector<double>& pos, Event event,
                                  double penalty) {
  const int n = static_cast<int>(pos.size());
  const auto& cons = cs.constraints();
  ParametricEval ev;

  for (int i = 0; i + 1 < n; ++i)
    if (!(pos[i] + 1e-9 < pos[i + 1])) return ev;  // degenerate spacing

  // rows: 1'lambda = 1, then constraints 0..n-2
  std::vector<double> m(static_cast<std::size_t>(n) * n), r(n);
  for (int j = 0; j < n; ++j) m[j] = 1.0;
  r[0] = 1.0;
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = cs.evaluate(cons[i - 1], pos[j]);
    r[i] = cons[i - 1].target;
  }
  // Gaussian elimination with partial pivoting
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(m[static_cast<std::size_t>(i) * n + col]) >
          std::abs(m[static_cast<std::size_t>(piv) * n + col]))
        piv = i;
    if (std::abs(m[static_cast<std::size_t>(piv) * n + col]) < 1e-13) return ev;
    if (piv != col) {
      for (int j = 0; j < n; ++j)
        std::swap(m[static_cast<std::size_t>(piv) * n + j],
                  m[static_cast<std::size_t>(col) * n + j]);
      std::swap(r[piv], r[col]);
    }
    for (int i = col + 1; i < n; ++i) {
      const double f = m[static_cast<std::size_t>(i) * n + col] /
                       m[static_cast<std::size_t>(col) * n + col];
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j)
        m[static_cast<std::size_t>(i) * n + j] -= f * m[static_cast<std::size_t>(col) * n + j];
      r[i] -= f * r[col];
    }
  }
  std::vector<double> lambda(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = r[i];
    for (int j = i + 1; j < n; ++j) s -= m[static_cast<std::size_t>(i) * n + j] * lambda[j];
    lambda[i] = s / m[static_cast<std::size_t>(i) * n + i];
  }
  for (double l : lambda)
    if (!(l > 1e-12 && l < 1.0)) return ev;

  ev.valid = true;
  ev.probs = lambda;
  ev.event_mass = 0.0;
  for (int j = 0; j < n; ++j)
    if (in_event(pos[j], event)) ev.event_mass += lambda[j];

  double pen = 0.0;
  for (const auto& c : cons) {
    double mom = 0.0;
    for (int j = 0; j < n; ++j) mom += lambda[j] * cs.evaluate(c, pos[j]);
    const double res = mom - c.target;
    ev.residuals.push_back(res);
    const double scaled = res / std::max(1.0, std::abs(c.target));
    pen += scaled * scaled;
  }
  ev.merit = ev.event_mass + penalty * pen;
  return ev;
}

template <typename F>
double golden_min(F&& f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best_x = f1 <= f2 ? x1 : x2;
  double best_f = std::min(f1, f2);
  for (int i = 0; i < 64; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    const double fx = std::min(f1, f2);
    if (fx < best_f) {
      best_f = fx;
      best_x = f1 <= f2 ? x1 : x2;
    }
  }
  return best_x;
}

}  // namespace

OracleResult min_prob_parametric(const MomentConstraintSet& cs, int atom_count,
                                 Event event) {
  if (atom_count != 2 && atom_count != 3)
    throw std::invalid_argument("atom_count must be 2 or 3");
  const auto& cons = cs.constraints();
  if (static_cast<int>(cons.size()) + 1 < atom_count)
    throw std::invalid_argument("not enough constraints to pin the probabilities");

  const double radius = cs.support_radius();
  std::vector<double> mags;
  for (int i = 0; i < 28; ++i)
    mags.push_back(radius * std::pow(1e-3, 1.0 - i / 27.0));

  struct Node {
    std::vector<double> pos;
    double merit;
  };
  std::vector<Node> nodes;
  const double w0 = 1e4;
  auto consider = [&](std::vector<double> pos) {
    std::sort(pos.begin(), pos.end());
    const ParametricEval ev = evaluate_positions(cs, pos, event, w0);
    if (ev.valid) nodes.push_back({std::move(pos), ev.merit});
  };

  if (atom_count == 2) {
    for (double lo : mags)
      for (double hi : mags) consider({-lo, hi});
  } else {
    const std::vector<double> mid = {0.0,          -1e-8,        1e-8,
                                     -radius * 1e-3, radius * 1e-3, -radius * 0.03,
                                     radius * 0.03, -radius * 0.2, radius * 0.2};
    for (double lo : mags)
      for (double hi : mags)
        for (double m : mid) {
          if (-lo < m && m < hi) consider({-lo, m, hi});
        }
  }
  if (nodes.empty()) {
    OracleResult res;
    res.status = OracleStatus::Infeasible;
    res.slack = kRelSlack;
    return res;
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& a, const Node& b) { return a.merit < b.merit; });
  if (nodes.size() > 12) nodes.resize(12);

  // Penalty continuation; the last level's equilibrium sits well inside the
  // residual band.
  const double penalties[] = {1e4, 1e6, 1e8, 1e10, 1e12};
  double best_mass = std::numeric_limits<double>::infinity();
  std::vector<double> best_pos;
  ParametricEval best_ev;

  auto merit_at = [&](const std::vector<double>& p, double w) {
    const ParametricEval ev = evaluate_positions(cs, p, event, w);
    return ev.valid ? ev.merit : std::numeric_limits<double>::infinity();
  };

  // Coordinate moves alone advance only ~one groove width per sweep inside
  // curved constraint valleys; line searches along the sweep displacement and
  // along the whole displacement since the level started compound that
  // progress geometrically.
  auto accel_along = [&](std::vector<double>& pos, const std::vector<double>& base,
                         double w) -> bool {
    double norm = 0.0;
    for (int i = 0; i < atom_count; ++i) {
      const double d = pos[i] - base[i];
      norm += d * d;
    }
    if (norm == 0.0) return false;
    auto ray = [&](double tpar) {
      std::vector<double> p(atom_count);
      for (int i = 0; i < atom_count; ++i) p[i] = base[i] + tpar * (pos[i] - base[i]);
      return merit_at(p, w);
    };
    const double tbest = golden_min(ray, -0.5, 8.0);
    if (ray(tbest) < merit_at(pos, w)) {
      for (int i = 0; i < atom_count; ++i) pos[i] = base[i] + tbest * (pos[i] - base[i]);
      return true;
    }
    return false;
  };

  auto descend = [&](std::vector<double>& pos, double w) {
    // anchor trails the walk; once a chord from it stops improving (manifold
    // curvature), it is re-based so chord growth can restart
    std::vector<double> anchor = pos;
    std::vector<double> step(atom_count);
    for (int i = 0; i < atom_count; ++i)
      step[i] = std::max(0.25 * std::abs(pos[i]), 0.01 * radius);
    for (int sweep = 0; sweep < 120; ++sweep) {
      const std::vector<double> before = pos;
      double moved = 0.0;
      for (int i = 0; i < atom_count; ++i) {
        const double old = pos[i];
        auto line = [&](double v) {
          std::vector<double> p = pos;
          p[i] = v;
          return merit_at(p, w);
        };
        const double next = golden_min(line, old - step[i], old + step[i]);
        if (line(next) < line(old)) pos[i] = next;
        const double delta = std::abs(pos[i] - old);
        moved = std::max(moved, delta);
        step[i] = std::max(1e-11, std::min(step[i], delta * 8.0 + step[i] * 0.5));
      }
      accel_along(pos, before, w);
      if (!accel_along(pos, anchor, w)) anchor = before;
      for (int i = 0; i < atom_count; ++i)
        moved = std::max(moved, std::abs(pos[i] - before[i]));
      if (moved < 1e-10) break;
    }
  };

  const int n_free = static_cast<int>(cons.size()) - (atom_count - 1);

  // Residuals of the constraints not absorbed by the probability solve,
  // scaled to the penalty metric.
  auto free_residuals = [&](const ParametricEval& ev, std::vector<double>& out) {
    out.clear();
    for (std::size_t j = atom_count - 1; j < ev.residuals.size(); ++j)
      out.push_back(ev.residuals[j] / std::max(1.0, std::abs(cons[j].target)));
  };

  // Walks the feasible manifold downhill in the event mass: project the mass
  // gradient onto the residual null space, line-search along it, Newton-pull
  // each trial point back onto the manifold.  Only useful when the manifold
  // has positive dimension (n_free < atom_count).  Atoms parked against the
  // zero wall (the event mass is discontinuous there) stay pinned.
  auto manifold_polish = [&](std::vector<double>& pos) {
    if (n_free >= atom_count) return;
    std::vector<bool> pinned(atom_count);
    for (int i = 0; i < atom_count; ++i) pinned[i] = std::abs(pos[i]) < 1e-8;

    auto jacobian_row_probe = [&](const std::vector<double>& at, int i,
                                  const std::vector<double>& r_base,
                                  std::vector<double>& col, double* mass_diff) -> bool {
      const double h0 = std::max(1e-7, 1e-7 * std::abs(at[i]));
      const double h = (at[i] < 0.0 && at[i] + h0 > 0.0) ? -h0 : h0;
      std::vector<double> p = at;
      p[i] += h;
      const ParametricEval evp = evaluate_positions(cs, p, event, 0.0);
      if (!evp.valid) return false;
      std::vector<double> rp;
      free_residuals(evp, rp);
      col.resize(n_free);
      for (int j = 0; j < n_free; ++j) col[j] = (rp[j] - r_base[j]) / h;
      if (mass_diff) *mass_diff = (evp.event_mass - evaluate_positions(cs, at, event, 0.0).event_mass) / h;
      return true;
    };

    auto newton_correct = [&](std::vector<double>& p) -> bool {
      std::vector<double> r, col, d(atom_count);
      for (int it = 0; it < 8; ++it) {
        const ParametricEval ev = evaluate_positions(cs, p, event, 0.0);
        if (!ev.valid) return false;
        free_residuals(ev, r);
        double rn = 0.0;
        for (double v : r) rn += v * v;
        if (rn < 1e-26) return true;
        std::vector<double> jac(static_cast<std::size_t>(n_free) * atom_count, 0.0);
        for (int i = 0; i < atom_count; ++i) {
          if (pinned[i]) continue;
          if (!jacobian_row_probe(p, i, r, col, nullptr)) return false;
          for (int j = 0; j < n_free; ++j)
            jac[static_cast<std::size_t>(j) * atom_count + i] = col[j];
        }
        if (n_free == 1) {
          double jj = 0.0;
          for (int i = 0; i < atom_count; ++i) jj += jac[i] * jac[i];
          if (jj < 1e-20) return false;
          const double y = r[0] / jj;
          for (int i = 0; i < atom_count; ++i) d[i] = -jac[i] * y;
        } else {
          double a00 = 0.0, a01 = 0.0, a11 = 0.0;
          for (int i = 0; i < atom_count; ++i) {
            a00 += jac[i] * jac[i];
            a01 += jac[i] * jac[atom_count + i];
            a11 += jac[atom_count + i] * jac[atom_count + i];
          }
          const double det = a00 * a11 - a01 * a01;
          if (std::abs(det) < 1e-20) return false;
          const double y0 = (a11 * r[0] - a01 * r[1]) / det;
          const double y1 = (a00 * r[1] - a01 * r[0]) / det;
          for (int i = 0; i < atom_count; ++i)
            d[i] = -(jac[i] * y0 + jac[atom_count + i] * y1);
        }
        for (int i = 0; i < atom_count; ++i) p[i] += d[i];
      }
      const ParametricEval ev = evaluate_positions(cs, p, event, 0.0);
      if (!ev.valid) return false;
      free_residuals(ev, r);
      double rn = 0.0;
      for (double v : r) rn += v * v;
      return rn < 1e-18;
    };

    if (!newton_correct(pos)) return;
    for (int iter = 0; iter < 60; ++iter) {
      const ParametricEval ev0 = evaluate_positions(cs, pos, event, 0.0);
      if (!ev0.valid) return;
      std::vector<double> gm(atom_count, 0.0), r0, col;
      free_residuals(ev0, r0);
      std::vector<double> jac(static_cast<std::size_t>(n_free) * atom_count, 0.0);
      for (int i = 0; i < atom_count; ++i) {
        if (pinned[i]) continue;
        double md = 0.0;
        if (!jacobian_row_probe(pos, i, r0, col, &md)) return;
        gm[i] = md;
        for (int j = 0; j < n_free; ++j)
          jac[static_cast<std::size_t>(j) * atom_count + i] = col[j];
      }
      // Gram-Schmidt the Jacobian rows, then project the gradient out
      std::vector<double> dir(gm);
      for (int j = 0; j < n_free; ++j) {
        double* row = &jac[static_cast<std::size_t>(j) * atom_count];
        for (int k = 0; k < j; ++k) {
          const double* prev = &jac[static_cast<std::size_t>(k) * atom_count];
          double dot = 0.0;
          for (int i = 0; i < atom_count; ++i) dot += row[i] * prev[i];
          for (int i = 0; i < atom_count; ++i) row[i] -= dot * prev[i];
        }
        double nrm = 0.0;
        for (int i = 0; i < atom_count; ++i) nrm += row[i] * row[i];
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) continue;
        for (int i = 0; i < atom_count; ++i) row[i] /= nrm;
        double dot = 0.0;
        for (int i = 0; i < atom_count; ++i) dot += dir[i] * row[i];
        for (int i = 0; i < atom_count; ++i) dir[i] -= dot * row[i];
      }
      double dn = 0.0;
      for (int i = 0; i < atom_count; ++i) dn += dir[i] * dir[i];
      dn = std::sqrt(dn);
      if (dn < 1e-11) return;
      for (int i = 0; i < atom_count; ++i) dir[i] = -dir[i] / dn;

      auto along = [&](double t) {
        std::vector<double> p(atom_count);
        for (int i = 0; i < atom_count; ++i) p[i] = pos[i] + t * dir[i];
        if (!newton_correct(p)) return std::numeric_limits<double>::infinity();
        return evaluate_positions(cs, p, event, 0.0).event_mass;
      };
      const double t = golden_min(along, 0.0, 0.5 * radius);
      if (!(along(t) < ev0.event_mass - 1e-14)) return;
      for (int i = 0; i < atom_count; ++i) pos[i] += t * dir[i];
      if (!newton_correct(pos)) return;
    }
  };

  for (const Node& start : nodes) {
    std::vector<double> pos = start.pos;
    for (double w : penalties) descend(pos, w);
    manifold_polish(pos);
    const ParametricEval ev = evaluate_positions(cs, pos, event, 0.0);
    if (!ev.valid) continue;
    bool within = true;
    for (std::size_t j = 0; j < ev.residuals.size(); ++j) {
      const double tol = kRelSlack * std::max(1.0, std::abs(cons[j].target));
      if (std::abs(ev.residuals[j]) > tol) within = false;
    }
    if (within && ev.event_mass < best_mass) {
      best_mass = ev.event_mass;
      best_pos = pos;
      best_ev = ev;
    }
  }

  OracleResult res;
  res.slack = kRelSlack;
  if (best_pos.empty()) {
    res.status = OracleStatus::Infeasible;
    return res;
  }
  std::vector<Atom> atoms;
  double total = 0.0;
  for (double p : best_ev.probs) total += p;
  for (int i = 0; i < atom_count; ++i)
    atoms.push_back({best_pos[i], best_ev.probs[i] / total});
  res.witness = DiscreteDistribution(std::move(atoms));
  res.status = OracleStatus::Optimal;
  res.min_prob = best_mass;
  res.constraint_residuals = best_ev.residuals;
  return res;
}

CertifyVerdict certify(const BoundReport& bound, const OracleResult& oracle, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (oracle.status != OracleStatus::Infeasible &&
      std::abs(oracle.min_prob - bound.value) <= tol)
    return CertifyVerdict::Certified;
  if (oracle.status != OracleStatus::Infeasible && oracle.min_prob < bound.value - tol)
    return CertifyVerdict::BoundTooHigh;
  return CertifyVerdict::OracleLoose;
}

}  // namespace tailbound
