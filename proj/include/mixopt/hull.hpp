#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mixopt/lp.hpp"
#include "mixopt/rational.hpp"

namespace mixopt {

inline void check_uniform_dimension(const std::vector<RatVec>& points,
                                    const RatVec& u) {
  if (points.empty()) throw std::invalid_argument("empty point list");
  for (const RatVec& p : points)
    if (p.size() != u.size())
      throw std::invalid_argument("point dimension mismatch");
}

/// Builds the simplex-weight LP skeleton: variables lambda >= 0 over the
/// points with sum(lambda) = 1 and, per coordinate, an exact equality
/// sum(lambda_i * points[i][j]) = u[j].
inline LinearProgram representation_lp(const std::vector<RatVec>& points,
                                       const RatVec& u) {
  check_uniform_dimension(points, u);
  const std::size_t n = points.size(), dim = u.size();
  LinearProgram lp(n);
  for (std::size_t i = 0; i < n; ++i) lp.set_lower(i, Rat(0));
  RatVec ones(n, Rat(1));
  lp.add_row(ones, Rel::Eq, Rat(1));
  for (std::size_t j = 0; j < dim; ++j) {
    RatVec row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = points[i][j];
    lp.add_row(std::move(row), Rel::Eq, u[j]);
  }
  return lp;
}

/// Simplex weights representing u over the points, or nullopt iff u is not
/// in their convex hull.
inline std::optional<RatVec> hull_weights(const std::vector<RatVec>& points,
                                          const RatVec& u) {
  return find_feasible(representation_lp(points, u));
}

inline std::vector<RatVec> select_points(const std::vector<RatVec>& points,
                                         const std::vector<std::size_t>& ids) {
  std::vector<RatVec> out;
  out.reserve(ids.size());
  for (std::size_t id : ids) out.push_back(points.at(id));
  return out;
}

}  // namespace mixopt
