#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mixopt/rational.hpp"

namespace mixopt {

using RatMat = std::vector<RatVec>;

/// Row-reduces in place; returns the pivot column of each pivot row.
/// Deterministic: the first nonzero entry in column order pivots.
inline std::vector<std::size_t> row_reduce(RatMat& m) {
  std::vector<std::size_t> pivot_cols;
  if (m.empty()) return pivot_cols;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

inline std::size_t rank(RatMat m) { return row_reduce(m).size(); }

/// Solves A x = b exactly. Requires a square nonsingular A.
inline RatVec solve_linear_system(RatMat a, RatVec b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n)
      throw std::invalid_argument("solve_linear_system: not square");
    a[i].push_back(b[i]);
  }
  std::vector<std::size_t> pivots = row_reduce(a);
  if (pivots.size() != n || pivots.back() >= n)
    throw std::invalid_argument("solve_linear_system: singular matrix");
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[pivots[i]] = a[i][n];
  return x;
}

/// A nonzero vector in the kernel of the matrix whose columns are the given
/// vectors each extended with a trailing 1 — i.e. coefficients mu with
/// sum(mu) = 0 and sum(mu_i * columns[i]) = 0. Returns nullopt when the
/// columns are affinely independent. Deterministic: the lowest-index free
/// column carries coefficient 1.
inline std::optional<RatVec> affine_dependence(const std::vector<RatVec>& columns) {
  if (columns.empty()) return std::nullopt;
  const std::size_t dim = columns[0].size(), n = columns.size();
  RatMat m(dim + 1, RatVec(n, Rat(0)));
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != dim)
      throw std::invalid_argument("affine_dependence: dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) m[i][j] = columns[j][i];
    m[dim][j] = 1;
  }
  std::vector<std::size_t> pivots = row_reduce(m);
  if (pivots.size() == n) return std::nullopt;
  std::size_t free_col = 0;
  {
    std::size_t pi = 0;
    while (pi < pivots.size() && pivots[pi] == free_col) ++pi, ++free_col;
  }
  RatVec mu(n, Rat(0));
  mu[free_col] = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] < free_col) mu[pivots[i]] = -m[i][free_col];
  return mu;
}

}  // namespace mixopt
