#pragma once

#include "tailbound/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tailbound::detail {

// Dense tableau simplex.  Dantzig pricing with a switch to Bland's rule after
// a degenerate stall, which guarantees termination.
class Tableau {
 public:
  Tableau(int m, int n_total) : m_(m), n_(n_total), width_(n_total + 1),
                                t_(static_cast<std::size_t>(m + 1) * (n_total + 1), 0.0),
                                basis_(m, -1) {}

  double& at(int i, int j) { return t_[static_cast<std::size_t>(i) * width_ + j]; }
  double& rhs(int i) { return t_[static_cast<std::size_t>(i) * width_ + n_]; }
  double& obj(int j) { return t_[static_cast<std::size_t>(m_) * width_ + j]; }
  double& obj_rhs() { return t_[static_cast<std::size_t>(m_) * width_ + n_]; }
  int basis(int i) const { return basis_[i]; }
  void set_basis(int i, int j) { basis_[i] = j; }

  void pivot(int row, int col) {
    const double inv = 1.0 / at(row, col);
    double* pr = &t_[static_cast<std::size_t>(row) * width_];
    for (int j = 0; j <= n_; ++j) pr[j] *= inv;
    pr[col] = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      double* ri = &t_[static_cast<std::size_t>(i) * width_];
      const double f = ri[col];
      if (f == 0.0) continue;
      for (int j = 0; j <= n_; ++j) ri[j] -= f * pr[j];
      ri[col] = 0.0;
    }
    basis_[row] = col;
  }

  // Returns false when no entering column remains (optimal), throws on
  // unbounded rays or iteration blowup.  Columns >= allowed_cols are barred.
  void iterate(int allowed_cols) {
    constexpr double kCostTol = 1e-9;
    constexpr double kPivotTol = 1e-10;
    int stall = 0;
    double last_obj = obj_rhs();
    for (long iter = 0; iter < 200000; ++iter) {
      const bool bland = stall > 64;
      int col = -1;
      double best = -kCostTol;
      for (int j = 0; j < allowed_cols; ++j) {
        const double rc = obj(j);
        if (rc < best) {
          best = rc;
          col = j;
          if (bland) break;  // first eligible index
        }
      }
      if (col < 0) return;  // optimal

      int row = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, col);
        if (a <= kPivotTol) continue;
        const double ratio = rhs(i) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (row < 0 || basis_[i] < basis_[row]))) {
          best_ratio = ratio;
          row = i;
        }
      }
      if (row < 0) throw std::runtime_error("simplex: unbounded direction");
      pivot(row, col);
      const double now = obj_rhs();
      stall = now < last_obj - 1e-13 ? 0 : stall + 1;
      last_obj = now;
    }
    throw std::runtime_error("simplex: iteration limit exceeded");
  }

  int rows() const { return m_; }
  int cols() const { return n_; }

 private:
  int m_, n_, width_;
  std::vector<double> t_;
  std::vector<int> basis_;
};

}  // namespace tailbound::detail
