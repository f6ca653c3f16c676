#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mixopt/errors.hpp"
#include "mixopt/hull.hpp"
#include "mixopt/linalg.hpp"
#include "mixopt/rational.hpp"

namespace mixopt {

/// Dimension of the affine hull of the points (0 for a single point).
inline std::size_t affine_dimension(const std::vector<RatVec>& points) {
  if (points.empty())
    throw std::invalid_argument("affine_dimension: empty point list");
  RatMat diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != points[0].size())
      throw std::invalid_argument("affine_dimension: dimension mismatch");
    diffs.push_back(points[i] - points[0]);
  }
  return rank(diffs);
}

/// Lowest-index representative for each distinct point value, in index order.
inline std::vector<std::size_t> distinct_point_ids(
    const std::vector<RatVec>& points) {
  std::vector<std::size_t> reps;
  std::map<RatVec, std::size_t> seen;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (seen.emplace(points[i], i).second) reps.push_back(i);
  return reps;
}

/// Whether points[index] lies outside the convex hull of the remaining
/// points.  A point listed twice is therefore reported non-extreme; use
/// extreme_point_ids for the geometric vertex set of the hull.
inline bool is_extreme(const std::vector<RatVec>& points, std::size_t index) {
  if (index >= points.size())
    throw std::invalid_argument("is_extreme: index out of range");
  std::vector<RatVec> others;
  others.reserve(points.size() - 1);
  for (std::size_t i = 0; i < points.size(); ++i)
    if (i != index) others.push_back(points[i]);
  if (others.empty()) return true;
  return !hull_weights(others, points[index]).has_value();
}

/// Vertices of the convex hull: for each distinct value, its lowest-index
/// occurrence, kept iff the value is not a convex combination of the other
/// distinct values.  Immune to duplicated input points.
inline std::vector<std::size_t> extreme_point_ids(
    const std::vector<RatVec>& points) {
  const std::vector<std::size_t> reps = distinct_point_ids(points);
  const std::vector<RatVec> distinct = select_points(points, reps);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < reps.size(); ++k)
    if (is_extreme(distinct, k)) out.push_back(reps[k]);
  return out;
}

/// A convex representation u = sum(weight_i * points[point_id_i]) whose
/// support points are extreme and affinely independent, so the support size
/// is at most affine_dimension(points) + 1.
struct Decomposition {
  std::vector<std::pair<std::size_t, Rat>> parts;  // (point id, weight > 0)

  std::size_t support_size() const { return parts.size(); }

  Rat weight_sum() const {
    Rat s(0);
    for (const auto& [id, w] : parts) s += w;
    return s;
  }
};

/// Carathéodory decomposition of u over the hull vertices of the points.
/// Throws HullMembershipError iff u is outside the hull.
inline Decomposition decompose(const std::vector<RatVec>& points,
                               const RatVec& u) {
  check_uniform_dimension(points, u);
  if (!hull_weights(points, u).has_value())
    throw HullMembershipError("decompose: point outside the convex hull");

  // Restrict to hull vertices: the hull is unchanged, so u stays inside.
  const std::vector<std::size_t> vertex_ids = extreme_point_ids(points);
  const std::vector<RatVec> vertices = select_points(points, vertex_ids);
  std::optional<RatVec> start = hull_weights(vertices, u);
  if (!start.has_value())
    throw InvariantViolation("decompose: vertex hull lost the query point");

  std::vector<std::size_t> support;  // indices into `vertices`
  RatVec weights;
  for (std::size_t k = 0; k < vertices.size(); ++k)
    if ((*start)[k] > 0) {
      support.push_back(k);
      weights.push_back((*start)[k]);
    }

  // Shrink the support along affine dependencies until it is affinely
  // independent; each pass zeroes at least one weight exactly.
  const std::size_t max_support = affine_dimension(points) + 1;
  while (support.size() > max_support) {
    std::vector<RatVec> sup_pts;
    for (std::size_t k : support) sup_pts.push_back(vertices[k]);
    std::optional<RatVec> mu = affine_dependence(sup_pts);
    if (!mu.has_value())
      throw InvariantViolation("decompose: oversized support is independent");
    bool has_positive = false;
    for (const Rat& m : *mu) has_positive = has_positive || m > 0;
    if (!has_positive)
      for (Rat& m : *mu) m = -m;  // coefficients sum to 0, so both signs exist
    bool have_theta = false;
    Rat theta(0);
    for (std::size_t k = 0; k < support.size(); ++k) {
      if ((*mu)[k] <= 0) continue;
      Rat ratio = weights[k] / (*mu)[k];
      if (!have_theta || ratio < theta) {
        theta = ratio;
        have_theta = true;
      }
    }
    std::vector<std::size_t> next_support;
    RatVec next_weights;
    for (std::size_t k = 0; k < support.size(); ++k) {
      Rat w = weights[k] - theta * (*mu)[k];
      if (w < 0)
        throw InvariantViolation("decompose: reduction produced a negative weight");
      if (w > 0) {
        next_support.push_back(support[k]);
        next_weights.push_back(w);
      }
    }
    if (next_support.size() >= support.size())
      throw InvariantViolation("decompose: reduction failed to shrink support");
    support = std::move(next_support);
    weights = std::move(next_weights);
  }

  Decomposition dec;
  for (std::size_t k = 0; k < support.size(); ++k)
    dec.parts.emplace_back(vertex_ids[support[k]], weights[k]);
  std::sort(dec.parts.begin(), dec.parts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return dec;
}

}  // namespace mixopt
