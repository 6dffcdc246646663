// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include "ccvp/lp.hpp"

#include <cmath>

#include "ccvp/errors.hpp"

namespace ccvp {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr std::size_t kMaxIterations = 100000;

struct ColumnMap {
  // x_i = shift + sign * y_k  (and for split free variables, - y_neg)
  std::size_t pos;
  std::size_t neg;  // only used when split
  double sign;
  double shift;
  bool split;
};

// Tableau with explicit basis bookkeeping. Row 0 is the reduced-cost row for
// the current (minimization) objective; rows 1..m hold the constraints.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_(rows + 1, cols + 1, 0.0), basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return t_(i, j); }
  double& rhs(std::size_t i) { return t_(i, cols_); }
  double& cost(std::size_t j) { return t_(0, j); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void set_costs(const Vec& c) {
    for (std::size_t j = 0; j <= cols_; ++j) t_(0, j) = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) t_(0, j) = c[j];
    // price out the current basis
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) t_(0, j) -= cb * t_(i + 1, j);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const double piv = t_(row + 1, col);
    for (std::size_t j = 0; j <= cols_; ++j) t_(row + 1, j) /= piv;
    t_(row + 1, col) = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == row + 1) continue;
      const double factor = t_(i, col);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) t_(i, j) -= factor * t_(row + 1, j);
      t_(i, col) = 0.0;
    }
    basis_[row] = col;
  }

  // Bland's rule: entering = smallest column index with negative reduced
  // cost; leaving = min ratio, ties resolved by smallest basic index.
  // Returns Optimal when no entering column exists, Unbounded when the
  // entering column has no positive entry.
  LpStatus iterate(const std::vector<bool>& banned) {
    for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (banned[j]) continue;
        if (t_(0, j) < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return LpStatus::Optimal;

      std::size_t leave = rows_;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = t_(i + 1, enter);
        if (a <= kPivotTol) continue;
        const double ratio = t_(i + 1, cols_) / a;
        if (leave == rows_ || ratio < best_ratio - 1e-12 ||
            (std::fabs(ratio - best_ratio) <= 1e-12 && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows_) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
    throw NumericalError("lp_solve: iteration limit reached");
  }

  double objective_for(const Vec& c) const {
    double obj = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) obj += c[basis_[i]] * t_(i + 1, cols_);
    return obj;
  }

  Vec basic_solution() const {
    Vec y(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) y[basis_[i]] = t_(i + 1, cols_);
    return y;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  Matrix t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult lp_solve(const LpProblem& lp) {
  const std::size_t nrows = lp.a.rows;
  const std::size_t ncols = lp.a.cols;
  if (nrows > 200 || ncols > 200)
    throw UsageError("lp_solve: dense solver is limited to 200 rows and 200 columns");
  if (lp.b.size() != nrows || lp.sense.size() != nrows)
    throw UsageError("lp_solve: row data size mismatch");
  if (lp.c.size() != ncols) throw UsageError("lp_solve: objective size mismatch");

  Vec lower = lp.lower.empty() ? Vec(ncols, 0.0) : lp.lower;
  Vec upper = lp.upper.empty() ? Vec(ncols, lp_infinity()) : lp.upper;
  require_size(lower, ncols, "lp_solve lower bounds");
  require_size(upper, ncols, "lp_solve upper bounds");
  for (std::size_t j = 0; j < ncols; ++j)
    if (lower[j] > upper[j]) return {LpStatus::Infeasible, {}, 0.0};

  // Shift/flip/split variables so every structural column is >= 0.
  std::vector<ColumnMap> map(ncols);
  std::size_t ny = 0;
  std::size_t n_upper_rows = 0;
  for (std::size_t j = 0; j < ncols; ++j) {
    const bool lo_fin = std::isfinite(lower[j]);
    const bool up_fin = std::isfinite(upper[j]);
    if (lo_fin) {
      map[j] = {ny++, 0, 1.0, lower[j], false};
      if (up_fin) ++n_upper_rows;
    } else if (up_fin) {
      map[j] = {ny++, 0, -1.0, upper[j], false};
    } else {
      map[j] = {ny, ny + 1, 1.0, 0.0, true};
      ny += 2;
    }
  }

  const std::size_t mrows = nrows + n_upper_rows;
  Matrix a(mrows, ny, 0.0);
  Vec b(mrows, 0.0);
  std::vector<RowSense> sense(mrows, RowSense::Le);

  for (std::size_t r = 0; r < nrows; ++r) {
    double shift_sum = 0.0;
    for (std::size_t j = 0; j < ncols; ++j) {
      const double arj = lp.a(r, j);
      if (arj == 0.0) continue;
      shift_sum += arj * map[j].shift;
      a(r, map[j].pos) += arj * map[j].sign;
      if (map[j].split) a(r, map[j].neg) -= arj;
    }
    b[r] = lp.b[r] - shift_sum;
    sense[r] = lp.sense[r];
  }
  {
    std::size_t r = nrows;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (std::isfinite(lower[j]) && std::isfinite(upper[j])) {
        a(r, map[j].pos) = 1.0;
        b[r] = upper[j] - lower[j];
        sense[r] = RowSense::Le;
        ++r;
      }
    }
  }

  for (std::size_t r = 0; r < mrows; ++r) {
    if (b[r] < 0.0) {
      for (std::size_t j = 0; j < ny; ++j) a(r, j) = -a(r, j);
      b[r] = -b[r];
      if (sense[r] == RowSense::Le) sense[r] = RowSense::Ge;
      else if (sense[r] == RowSense::Ge) sense[r] = RowSense::Le;
    }
  }

  // Column layout: structural | slack/surplus | artificial.
  std::size_t n_slack = 0, n_art = 0;
  for (RowSense s : sense) {
    if (s != RowSense::Eq) ++n_slack;
    if (s != RowSense::Le) ++n_art;
  }
  const std::size_t total = ny + n_slack + n_art;
  Tableau tab(mrows, total);

  std::vector<bool> is_artificial(total, false);
  {
    std::size_t slack_at = ny;
    std::size_t art_at = ny + n_slack;
    for (std::size_t r = 0; r < mrows; ++r) {
      for (std::size_t j = 0; j < ny; ++j) tab.at(r + 1, j) = a(r, j);
      tab.rhs(r + 1) = b[r];
      if (sense[r] == RowSense::Le) {
        tab.at(r + 1, slack_at) = 1.0;
        tab.basis()[r] = slack_at++;
      } else if (sense[r] == RowSense::Ge) {
        tab.at(r + 1, slack_at) = -1.0;
        ++slack_at;
        tab.at(r + 1, art_at) = 1.0;
        is_artificial[art_at] = true;
        tab.basis()[r] = art_at++;
      } else {
        tab.at(r + 1, art_at) = 1.0;
        is_artificial[art_at] = true;
        tab.basis()[r] = art_at++;
      }
    }
  }

  const std::vector<bool> no_ban(total, false);
  double bscale = 1.0;
  for (std::size_t r = 0; r < mrows; ++r) bscale = std::max(bscale, std::fabs(b[r]));

  if (n_art > 0) {
    Vec phase1_cost(total, 0.0);
    for (std::size_t j = 0; j < total; ++j)
      if (is_artificial[j]) phase1_cost[j] = 1.0;
    tab.set_costs(phase1_cost);
    const LpStatus st = tab.iterate(no_ban);
    if (st == LpStatus::Unbounded)
      throw NumericalError("lp_solve: phase 1 unbounded (should not happen)");
    if (tab.objective_for(phase1_cost) > 1e-9 * bscale)
      return {LpStatus::Infeasible, {}, 0.0};

    // Pivot remaining artificial basics out wherever the row has support on a
    // real column; a row without support is redundant and its artificial
    // stays basic at zero, banned from re-entering.
    for (std::size_t r = 0; r < mrows; ++r) {
      if (!is_artificial[tab.basis()[r]]) continue;
      for (std::size_t j = 0; j < ny + n_slack; ++j) {
        if (std::fabs(tab.at(r + 1, j)) > kPivotTol) {
          tab.pivot(r, j);
          break;
        }
      }
    }
  }

  // Phase 2: minimize -(transformed c).
  Vec phase2_cost(total, 0.0);
  double const_term = 0.0;
  for (std::size_t j = 0; j < ncols; ++j) {
    const_term += lp.c[j] * map[j].shift;
    phase2_cost[map[j].pos] -= lp.c[j] * map[j].sign;
    if (map[j].split) phase2_cost[map[j].neg] += lp.c[j];
  }
  (void)const_term;
  tab.set_costs(phase2_cost);
  const LpStatus st = tab.iterate(is_artificial);
  if (st == LpStatus::Unbounded) return {LpStatus::Unbounded, {}, 0.0};

  const Vec y = tab.basic_solution();
  Vec x(ncols, 0.0);
  for (std::size_t j = 0; j < ncols; ++j) {
    double v = map[j].shift + map[j].sign * y[map[j].pos];
    if (map[j].split) v -= y[map[j].neg];
    x[j] = v;
  }
  return {LpStatus::Optimal, x, dot(lp.c, x)};
}

}  // namespace ccvp
