#pragma once

// Brute-force reference implementations used to cross-check the main
// pipeline.  Everything here is answered directly from definitions on top of
// the LP kernel; none of the geometric helpers of the pipeline are reused.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mixopt/errors.hpp"
#include "mixopt/ext_real.hpp"
#include "mixopt/instance.hpp"
#include "mixopt/lp.hpp"
#include "mixopt/rational.hpp"

namespace mixopt {

inline constexpr std::size_t kMaxOraclePoints = 12;   // 2^n subsets
inline constexpr std::size_t kMaxSearchAtoms = 15;    // subset enumeration

/// All faces of the hull, each as the sorted list of point ids it contains.
struct FaceSet {
  std::vector<std::vector<std::size_t>> faces;

  bool contains(std::vector<std::size_t> ids) const {
    std::sort(ids.begin(), ids.end());
    return std::find(faces.begin(), faces.end(), ids) != faces.end();
  }
};

namespace oracle_detail {

// Membership test written out from the definition: u is a convex
// combination of the listed points.
inline bool in_hull(const std::vector<RatVec>& points,
                    const std::vector<std::size_t>& ids, const RatVec& u) {
  LinearProgram lp(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) lp.set_lower(k, Rat(0));
  lp.add_row(RatVec(ids.size(), Rat(1)), Rel::Eq, Rat(1));
  for (std::size_t j = 0; j < u.size(); ++j) {
    RatVec row(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) row[k] = points[ids[k]][j];
    lp.add_row(std::move(row), Rel::Eq, u[j]);
  }
  return find_feasible(lp).has_value();
}

// Definitional face predicate: conv(S) is a face iff no convex combination
// of the points that leans on a point outside S lands inside conv(S).  One
// LP decides it: maximise the total weight outside S among representations
// lambda (over all points) whose combination lies in conv(S).
inline bool is_face(const std::vector<RatVec>& points,
                    const std::vector<std::size_t>& inside,
                    const std::vector<std::size_t>& outside) {
  for (std::size_t q : outside)
    for (std::size_t i : inside)
      if (points[q] == points[i]) return false;  // duplicate value blends in
  if (outside.empty()) return true;  // the whole hull is a face of itself

  const std::size_t n = points.size(), m = inside.size();
  const std::size_t dim = points[0].size();
  LinearProgram lp(n + m);  // lambda over all points, mu over S
  lp.sense = Sense::Maximize;
  for (std::size_t i = 0; i < n + m; ++i) lp.set_lower(i, Rat(0));
  for (std::size_t q : outside) lp.objective[q] = Rat(1);
  {
    RatVec row(n + m, Rat(0));
    for (std::size_t i = 0; i < n; ++i) row[i] = Rat(1);
    lp.add_row(std::move(row), Rel::Eq, Rat(1));
  }
  {
    RatVec row(n + m, Rat(0));
    for (std::size_t k = 0; k < m; ++k) row[n + k] = Rat(1);
    lp.add_row(std::move(row), Rel::Eq, Rat(1));
  }
  for (std::size_t j = 0; j < dim; ++j) {
    RatVec row(n + m, Rat(0));
    for (std::size_t i = 0; i < n; ++i) row[i] = points[i][j];
    for (std::size_t k = 0; k < m; ++k) row[n + k] = -points[inside[k]][j];
    lp.add_row(std::move(row), Rel::Eq, Rat(0));
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal)
    throw InvariantViolation("oracle face predicate: LP not optimal");
  return res.value == 0;
}

}  // namespace oracle_detail

/// Enumerates every face of conv(points) over all nonempty id subsets.
inline FaceSet oracle_faces(const std::vector<RatVec>& points) {
  if (points.empty())
    throw std::invalid_argument("oracle_faces: empty point list");
  if (points.size() > kMaxOraclePoints)
    throw SizeLimitError("oracle_faces: too many points to enumerate");
  for (const RatVec& p : points)
    if (p.size() != points[0].size())
      throw std::invalid_argument("oracle_faces: dimension mismatch");

  const std::size_t n = points.size();
  FaceSet out;
  for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
    std::vector<std::size_t> inside, outside;
    for (std::size_t i = 0; i < n; ++i)
      ((mask >> i) & 1 ? inside : outside).push_back(i);
    if (oracle_detail::is_face(points, inside, outside))
      out.faces.push_back(std::move(inside));
  }
  return out;
}

/// Intersection of all enumerated faces whose hull contains u, against a
/// precomputed face list (reusable across query points of one hull).
inline std::vector<std::size_t> oracle_minimal_face(
    const std::vector<RatVec>& points, const RatVec& u, const FaceSet& faces) {
  std::vector<std::size_t> all(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) all[i] = i;
  if (!oracle_detail::in_hull(points, all, u))
    throw HullMembershipError("oracle_minimal_face: point outside the hull");
  std::vector<std::size_t> result = all;
  for (const std::vector<std::size_t>& face : faces.faces) {
    if (!oracle_detail::in_hull(points, face, u)) continue;
    std::vector<std::size_t> next;
    std::set_intersection(result.begin(), result.end(), face.begin(),
                          face.end(), std::back_inserter(next));
    result = std::move(next);
  }
  return result;
}

inline std::vector<std::size_t> oracle_minimal_face(
    const std::vector<RatVec>& points, const RatVec& u) {
  return oracle_minimal_face(points, u, oracle_faces(points));
}

/// Exact optimum by one LP over the whole mixture simplex, written straight
/// from the problem statement.  nullopt iff no feasible mixture exists.
inline std::optional<ExtReal> oracle_optimal(const Instance& instance) {
  instance.validate();
  const std::size_t J = instance.J();

  // Atoms with an infinite constraint coordinate can never carry weight.
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < instance.num_atoms(); ++i) {
    bool ok = true;
    for (std::size_t j = 1; j <= J; ++j)
      ok = ok && instance.atoms[i].w[j].is_finite();
    if (ok) usable.push_back(i);
  }
  auto bound_lp = [&](const std::vector<std::size_t>& ids) {
    LinearProgram lp(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) lp.set_lower(k, Rat(0));
    lp.add_row(RatVec(ids.size(), Rat(1)), Rel::Eq, Rat(1));
    for (std::size_t j = 1; j <= J; ++j) {
      RatVec row(ids.size());
      for (std::size_t k = 0; k < ids.size(); ++k)
        row[k] = instance.atoms[ids[k]].w[j].value();
      lp.add_row(std::move(row), Rel::Le, instance.d[j - 1]);
    }
    return lp;
  };
  if (usable.empty() || !find_feasible(bound_lp(usable)).has_value())
    return std::nullopt;

  std::vector<std::size_t> finite;
  for (std::size_t i : usable)
    if (instance.atoms[i].w[0].is_finite()) finite.push_back(i);
  if (finite.empty()) return ExtReal::infinity();
  LinearProgram lp = bound_lp(finite);
  for (std::size_t k = 0; k < finite.size(); ++k)
    lp.objective[k] = instance.atoms[finite[k]].w[0].value();
  LpResult res = solve_lp(lp);
  if (res.status == LpStatus::Infeasible) return ExtReal::infinity();
  if (res.status != LpStatus::Optimal)
    throw InvariantViolation("oracle_optimal: bounded LP reported unbounded");
  return ExtReal(res.value);
}

/// Best feasible objective over all mixtures supported on at most s atoms,
/// by enumerating the atom subsets and solving each restricted LP.  nullopt
/// iff no subset of size <= s carries a feasible mixture.
inline std::optional<ExtReal> oracle_support_search(const Instance& instance,
                                                    std::size_t s) {
  instance.validate();
  if (s == 0)
    throw std::invalid_argument("oracle_support_search: support bound is 0");
  if (instance.num_atoms() > kMaxSearchAtoms)
    throw SizeLimitError("oracle_support_search: too many atoms to enumerate");
  const std::size_t J = instance.J();

  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < instance.num_atoms(); ++i) {
    bool ok = true;
    for (std::size_t j = 1; j <= J; ++j)
      ok = ok && instance.atoms[i].w[j].is_finite();
    if (ok) usable.push_back(i);
  }

  std::optional<ExtReal> best;
  auto consider = [&best](const ExtReal& v) {
    if (!best.has_value() || v < *best) best = v;
  };

  // Restricted LP over the chosen subset: feasibility only when some chosen
  // atom has an infinite objective entry, value minimisation otherwise.
  auto probe = [&](const std::vector<std::size_t>& ids) {
    bool finite_objective = true;
    for (std::size_t id : ids)
      finite_objective = finite_objective && instance.atoms[id].w[0].is_finite();
    if (!finite_objective && best.has_value() && best->is_finite())
      return;  // an infinite candidate can no longer win
    LinearProgram lp(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) lp.set_lower(k, Rat(0));
    lp.add_row(RatVec(ids.size(), Rat(1)), Rel::Eq, Rat(1));
    for (std::size_t j = 1; j <= J; ++j) {
      RatVec row(ids.size());
      for (std::size_t k = 0; k < ids.size(); ++k)
        row[k] = instance.atoms[ids[k]].w[j].value();
      lp.add_row(std::move(row), Rel::Le, instance.d[j - 1]);
    }
    if (!finite_objective) {
      if (find_feasible(lp).has_value()) consider(ExtReal::infinity());
      return;
    }
    for (std::size_t k = 0; k < ids.size(); ++k)
      lp.objective[k] = instance.atoms[ids[k]].w[0].value();
    LpResult res = solve_lp(lp);
    if (res.status == LpStatus::Optimal) consider(ExtReal(res.value));
  };

  std::vector<std::size_t> chosen;
  auto enumerate = [&](auto&& self, std::size_t next) -> void {
    if (!chosen.empty()) probe(chosen);
    if (chosen.size() == s) return;
    for (std::size_t k = next; k < usable.size(); ++k) {
      chosen.push_back(usable[k]);
      self(self, k + 1);
      chosen.pop_back();
    }
  };
  enumerate(enumerate, 0);
  return best;
}

}  // namespace mixopt
