#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mixopt/rational.hpp"

namespace mixopt {

enum class Sense { Minimize, Maximize };
enum class Rel { Le, Eq, Ge };

struct LpRow {
  RatVec coeffs;
  Rel rel{Rel::Le};
  Rat rhs{0};

  bool operator==(const LpRow& o) const {
    return rel == o.rel && rhs == o.rhs && coeffs == o.coeffs;
  }
};

/// Dense LP: optimize objective over { x : rows hold, bounds hold }.
/// Variables are free unless a bound is set.
struct LinearProgram {
  explicit LinearProgram(std::size_t num_vars, Sense s = Sense::Minimize)
      : sense(s), objective(num_vars, Rat(0)), lower(num_vars), upper(num_vars) {}

  Sense sense;
  RatVec objective;
  std::vector<LpRow> rows;
  std::vector<std::optional<Rat>> lower;
  std::vector<std::optional<Rat>> upper;

  std::size_t num_vars() const { return objective.size(); }

  void add_row(RatVec coeffs, Rel rel, Rat rhs) {
    if (coeffs.size() != num_vars())
      throw std::invalid_argument("LinearProgram: row dimension mismatch");
    rows.push_back(LpRow{std::move(coeffs), rel, std::move(rhs)});
  }
  void set_lower(std::size_t i, Rat l) { lower.at(i) = std::move(l); }
  void set_upper(std::size_t i, Rat u) { upper.at(i) = std::move(u); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status{LpStatus::Infeasible};
  Rat value{0};
  RatVec point;

  bool optimal() const { return status == LpStatus::Optimal; }
};

namespace detail {

/// Full-tableau primal simplex over the rationals, Bland's rule throughout.
/// Standard form: min cost . y  s.t.  T y = rhs, y >= 0.
class SimplexTableau {
 public:
  SimplexTableau(std::vector<RatVec> rows, RatVec rhs, std::size_t num_cols)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), num_cols_(num_cols),
        basis_(rows_.size(), SIZE_MAX), allowed_(num_cols, true) {}

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return num_cols_; }

  void set_basic(std::size_t row, std::size_t col) { basis_[row] = col; }
  void disallow(std::size_t col) { allowed_[col] = false; }

  const std::vector<std::size_t>& basis() const { return basis_; }
  const Rat& entry(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  const Rat& basic_value(std::size_t r) const { return rhs_[r]; }

  /// Minimizes cost . y from the current basis. The basis columns must form
  /// an identity (as established by construction or previous pivots) and the
  /// rhs must be nonnegative. Returns false when unbounded.
  bool minimize(const RatVec& cost) {
    reduced_ = cost;
    obj_ = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rat& cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t c = 0; c < num_cols_; ++c) reduced_[c] -= cb * rows_[r][c];
      obj_ -= cb * rhs_[r];
    }
    for (;;) {
      std::size_t enter = num_cols_;
      for (std::size_t c = 0; c < num_cols_; ++c) {
        if (allowed_[c] && sgn(reduced_[c]) < 0) {
          enter = c;
          break;
        }
      }
      if (enter == num_cols_) return true;  // optimal

      std::size_t leave = rows_.size();
      Rat best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (sgn(rows_[r][enter]) <= 0) continue;
        Rat ratio = rhs_[r] / rows_[r][enter];
        if (leave == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == rows_.size()) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  /// Objective value reached by the last minimize() call.
  Rat objective_value() const { return -obj_; }

  void pivot(std::size_t r, std::size_t c) {
    Rat p = rows_[r][c];
    if (sgn(p) == 0) throw std::logic_error("simplex: zero pivot");
    for (std::size_t j = 0; j < num_cols_; ++j) rows_[r][j] /= p;
    rhs_[r] /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || sgn(rows_[i][c]) == 0) continue;
      Rat f = rows_[i][c];
      for (std::size_t j = 0; j < num_cols_; ++j) rows_[i][j] -= f * rows_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    if (!reduced_.empty() && sgn(reduced_[c]) != 0) {
      Rat f = reduced_[c];
      for (std::size_t j = 0; j < num_cols_; ++j) reduced_[j] -= f * rows_[r][j];
      obj_ -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::vector<RatVec> rows_;
  RatVec rhs_;
  std::size_t num_cols_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  RatVec reduced_;
  Rat obj_{0};
};

/// How an original variable maps into the nonnegative standard-form space.
struct VarMap {
  Rat shift{0};     // x = shift + sign * y[col] (+ optionally - y[neg_col])
  int sign{1};
  std::size_t col{SIZE_MAX};
  std::size_t neg_col{SIZE_MAX};  // used only for free variables
};

}  // namespace detail

/// Exact two-phase simplex with Bland's rule: deterministic, zero tolerance.
inline LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  for (const LpRow& row : lp.rows)
    if (row.coeffs.size() != n)
      throw std::invalid_argument("solve_lp: row dimension mismatch");
  if (lp.lower.size() != n || lp.upper.size() != n)
    throw std::invalid_argument("solve_lp: bounds dimension mismatch");

  LpResult result;

  // Bound sanity: an empty box is infeasible, not an error.
  for (std::size_t i = 0; i < n; ++i)
    if (lp.lower[i] && lp.upper[i] && *lp.lower[i] > *lp.upper[i]) return result;

  // Working copy of the rows with exact duplicates removed. Upper bounds of
  // doubly-bounded variables become ordinary rows; the lower bound is then
  // absorbed by the shift below.
  std::vector<LpRow> rows;
  for (const LpRow& row : lp.rows)
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
  for (std::size_t i = 0; i < n; ++i) {
    if (lp.lower[i] && lp.upper[i]) {
      LpRow r;
      r.coeffs.assign(n, Rat(0));
      r.coeffs[i] = 1;
      r.rel = Rel::Le;
      r.rhs = *lp.upper[i];
      rows.push_back(std::move(r));
    }
  }

  // Nonnegative reformulation of the variables.
  std::vector<detail::VarMap> vmap(n);
  std::size_t y_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (lp.lower[i]) {
      vmap[i].shift = *lp.lower[i];
      vmap[i].sign = 1;
      vmap[i].col = y_count++;
    } else if (lp.upper[i]) {
      vmap[i].shift = *lp.upper[i];
      vmap[i].sign = -1;
      vmap[i].col = y_count++;
    } else {
      vmap[i].col = y_count++;
      vmap[i].neg_col = y_count++;
    }
  }

  const std::size_t m = rows.size();
  // Column layout: y variables, then one slack/surplus per inequality row,
  // then one artificial per row that needs it.
  std::size_t num_slack = 0;
  for (const LpRow& row : rows)
    if (row.rel != Rel::Eq) ++num_slack;

  // Substitute, normalize rhs >= 0, then place slack and artificial columns.
  struct BuiltRow {
    RatVec y_coeffs;
    Rel rel;
    Rat rhs;
  };
  std::vector<BuiltRow> built;
  built.reserve(m);
  for (const LpRow& row : rows) {
    BuiltRow b;
    b.y_coeffs.assign(y_count, Rat(0));
    b.rhs = row.rhs;
    b.rel = row.rel;
    for (std::size_t i = 0; i < n; ++i) {
      const Rat& a = row.coeffs[i];
      if (sgn(a) == 0) continue;
      b.rhs -= a * vmap[i].shift;
      b.y_coeffs[vmap[i].col] += vmap[i].sign > 0 ? a : -a;
      if (vmap[i].neg_col != SIZE_MAX) b.y_coeffs[vmap[i].neg_col] -= a;
    }
    if (sgn(b.rhs) < 0) {
      for (Rat& c : b.y_coeffs) c = -c;
      b.rhs = -b.rhs;
      if (b.rel == Rel::Le) b.rel = Rel::Ge;
      else if (b.rel == Rel::Ge) b.rel = Rel::Le;
    }
    built.push_back(std::move(b));
  }

  std::size_t num_art = 0;
  for (const BuiltRow& b : built)
    if (b.rel != Rel::Le) ++num_art;  // Ge and Eq rows need artificials
  const std::size_t cols = y_count + num_slack + num_art;

  std::vector<RatVec> mat(m, RatVec(cols, Rat(0)));
  RatVec rhs(m);
  std::vector<std::size_t> initial_basis(m);
  {
    std::size_t slack_at = y_count;
    std::size_t art_at = y_count + num_slack;
    for (std::size_t r = 0; r < m; ++r) {
      BuiltRow& b = built[r];
      for (std::size_t c = 0; c < y_count; ++c) mat[r][c] = std::move(b.y_coeffs[c]);
      rhs[r] = std::move(b.rhs);
      if (b.rel == Rel::Le) {
        mat[r][slack_at] = 1;
        initial_basis[r] = slack_at++;
      } else if (b.rel == Rel::Ge) {
        mat[r][slack_at] = -1;
        ++slack_at;
        mat[r][art_at] = 1;
        initial_basis[r] = art_at++;
      } else {
        mat[r][art_at] = 1;
        initial_basis[r] = art_at++;
      }
    }
  }
  detail::SimplexTableau tab(std::move(mat), std::move(rhs), cols);
  for (std::size_t r = 0; r < m; ++r) tab.set_basic(r, initial_basis[r]);

  // Phase 1: drive the artificials to zero.
  if (num_art > 0) {
    RatVec phase1(cols, Rat(0));
    for (std::size_t c = y_count + num_slack; c < cols; ++c) phase1[c] = 1;
    bool bounded = tab.minimize(phase1);
    if (!bounded) throw std::logic_error("solve_lp: phase 1 unbounded");
    if (sgn(tab.objective_value()) != 0) return result;  // Infeasible

    // Remove artificials from the basis; a row with no eligible pivot is a
    // redundant (all-zero) constraint and is dropped.
    for (std::size_t r = tab.num_rows(); r-- > 0;) {
      if (tab.basis()[r] < y_count + num_slack) continue;
      std::size_t c = 0;
      for (; c < y_count + num_slack; ++c)
        if (sgn(tab.entry(r, c)) != 0) break;
      if (c < y_count + num_slack) tab.pivot(r, c);
      else tab.drop_row(r);
    }
    for (std::size_t c = y_count + num_slack; c < cols; ++c) tab.disallow(c);
  }

  // Phase 2.
  RatVec cost(cols, Rat(0));
  const bool maximize = lp.sense == Sense::Maximize;
  for (std::size_t i = 0; i < n; ++i) {
    Rat c = maximize ? Rat(-lp.objective[i]) : lp.objective[i];
    if (sgn(c) == 0) continue;
    cost[vmap[i].col] += vmap[i].sign > 0 ? c : -c;
    if (vmap[i].neg_col != SIZE_MAX) cost[vmap[i].neg_col] -= c;
  }
  if (!tab.minimize(cost)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  RatVec y(y_count, Rat(0));
  for (std::size_t r = 0; r < tab.num_rows(); ++r)
    if (tab.basis()[r] < y_count) y[tab.basis()[r]] = tab.basic_value(r);

  result.status = LpStatus::Optimal;
  result.point.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat v = vmap[i].shift;
    v += vmap[i].sign > 0 ? y[vmap[i].col] : -y[vmap[i].col];
    if (vmap[i].neg_col != SIZE_MAX) v -= y[vmap[i].neg_col];
    result.point[i] = std::move(v);
  }
  // The reported value is recomputed from the point so that Optimal outcomes
  // satisfy value == objective(point) identically.
  result.value = dot(lp.objective, result.point);
  return result;
}

/// A point satisfying every row and bound of `lp` exactly (the objective is
/// ignored), or nullopt iff the system is infeasible.
inline std::optional<RatVec> find_feasible(const LinearProgram& lp) {
  LinearProgram probe = lp;
  probe.sense = Sense::Minimize;
  std::fill(probe.objective.begin(), probe.objective.end(), Rat(0));
  LpResult r = solve_lp(probe);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.point;
}

}  // namespace mixopt
