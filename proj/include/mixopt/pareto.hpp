#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixopt/errors.hpp"
#include "mixopt/ext_real.hpp"
#include "mixopt/hull.hpp"
#include "mixopt/instance.hpp"
#include "mixopt/lp.hpp"
#include "mixopt/rational.hpp"

namespace mixopt {

/// Closed half-space boundary {w : normal . w = offset}; the certified side
/// is normal . w >= offset.
struct Hyperplane {
  RatVec normal;
  Rat offset;
};

/// Nested supporting-hyperplane certificate for a Pareto point w_star of a
/// finite point set: plane i supports the points left on planes 1..i-1, the
/// final plane has a strictly positive normal, and `active` is the set of
/// point ids lying on every plane.
struct Certificate {
  RatVec w_star;
  std::vector<Hyperplane> planes;
  std::vector<std::size_t> active;

  std::size_t k() const { return planes.size(); }
};

struct VerifyReport {
  bool ok{false};
  std::vector<std::string> reasons;  // empty iff ok
};

namespace detail {

// Constraint rows shared by the feasibility and value LPs: lambda lives on
// the simplex and the mixed constraint coordinates stay within the bounds.
inline LinearProgram mixture_lp(const std::vector<RatVec>& columns,
                                const RatVec& d) {
  const std::size_t n = columns.size();
  LinearProgram lp(n);
  for (std::size_t i = 0; i < n; ++i) lp.set_lower(i, Rat(0));
  lp.add_row(RatVec(n, Rat(1)), Rel::Eq, Rat(1));
  for (std::size_t j = 0; j < d.size(); ++j) {
    RatVec row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = columns[i][j + 1];
    lp.add_row(std::move(row), Rel::Le, d[j]);
  }
  return lp;
}

}  // namespace detail

/// Least achievable first coordinate over feasible mixtures: nullopt iff no
/// mixture satisfies the bounds, infinity iff feasible mixtures exist but
/// every one has an infinite first coordinate.
inline std::optional<ExtReal> optimal_value(const Instance& instance) {
  instance.validate();

  // Feasibility only depends on the constraint coordinates, so atoms that
  // are infinite there can never carry weight in a feasible mixture.
  const std::vector<std::size_t> usable = constraint_finite_atoms(instance);
  if (usable.empty()) return std::nullopt;
  {
    std::vector<RatVec> cols;
    for (std::size_t id : usable) {
      RatVec col(instance.J() + 1, Rat(0));  // first coordinate unused here
      for (std::size_t j = 1; j <= instance.J(); ++j)
        col[j] = instance.atoms[id].w[j].value();
      cols.push_back(std::move(col));
    }
    if (!find_feasible(detail::mixture_lp(cols, instance.d)).has_value())
      return std::nullopt;
  }

  // A finite value requires weight only on fully finite atoms.
  const std::vector<std::size_t> finite = fully_finite_atoms(instance);
  if (finite.empty()) return ExtReal::infinity();
  const std::vector<RatVec> cols = atom_vectors(instance, finite);
  LinearProgram lp = detail::mixture_lp(cols, instance.d);
  for (std::size_t i = 0; i < cols.size(); ++i) lp.objective[i] = cols[i][0];
  LpResult res = solve_lp(lp);
  if (res.status == LpStatus::Infeasible) return ExtReal::infinity();
  if (res.status != LpStatus::Optimal)
    throw InvariantViolation("optimal_value: bounded LP reported unbounded");
  return ExtReal(res.value);
}

namespace detail {

// Auxiliary sum-minimisation at a fixed first-coordinate bound d0: its
// optimum is Pareto, with the first coordinate pinned to d0.
inline RatVec pareto_point_at(const Instance& instance, const Rat& d0) {
  const std::vector<std::size_t> finite = fully_finite_atoms(instance);
  const std::vector<RatVec> cols = atom_vectors(instance, finite);
  const std::size_t n = cols.size();
  LinearProgram lp(n);
  for (std::size_t i = 0; i < n; ++i) lp.set_lower(i, Rat(0));
  lp.add_row(RatVec(n, Rat(1)), Rel::Eq, Rat(1));
  RatVec bound = instance.d;
  bound.insert(bound.begin(), d0);
  for (std::size_t j = 0; j < bound.size(); ++j) {
    RatVec row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = cols[i][j];
    lp.add_row(std::move(row), Rel::Le, bound[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rat total(0);
    for (const Rat& c : cols[i]) total += c;
    lp.objective[i] = total;
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal)
    throw InvariantViolation("pareto_point: auxiliary LP not optimal");
  RatVec w(instance.J() + 1, Rat(0));
  for (std::size_t j = 0; j <= instance.J(); ++j)
    for (std::size_t i = 0; i < n; ++i) w[j] += res.point[i] * cols[i][j];
  if (w[0] != d0)
    throw InvariantViolation("pareto_point: first coordinate above its bound");
  return w;
}

}  // namespace detail

/// A Pareto point of the feasible performance set whose first coordinate
/// equals the optimal value.  Requires a finite optimal value.
inline RatVec pareto_point(const Instance& instance) {
  std::optional<ExtReal> value = optimal_value(instance);
  if (!value.has_value())
    throw std::invalid_argument("pareto_point: instance is inconsistent");
  if (value->is_infinite())
    throw std::invalid_argument("pareto_point: optimal value is infinite");
  return detail::pareto_point_at(instance, value->value());
}

/// Whether u lies in the hull of the points with no distinct hull point
/// dominating it coordinatewise.
inline bool is_pareto(const RatVec& u, const std::vector<RatVec>& points) {
  check_uniform_dimension(points, u);
  const std::size_t n = points.size(), dim = u.size();
  LinearProgram lp(n);
  for (std::size_t i = 0; i < n; ++i) lp.set_lower(i, Rat(0));
  lp.add_row(RatVec(n, Rat(1)), Rel::Eq, Rat(1));
  for (std::size_t j = 0; j < dim; ++j) {
    RatVec row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = points[i][j];
    lp.add_row(std::move(row), Rel::Le, u[j]);
  }
  Rat target(0);
  for (std::size_t i = 0; i < n; ++i) {
    Rat total(0);
    for (const Rat& c : points[i]) total += c;
    lp.objective[i] = total;
  }
  for (const Rat& c : u) target += c;
  LpResult res = solve_lp(lp);
  if (res.status == LpStatus::Infeasible) return false;
  if (res.status != LpStatus::Optimal)
    throw InvariantViolation("is_pareto: bounded LP reported unbounded");
  // Any hull point v <= u has coordinate sum <= sum(u), with equality only
  // at v = u, so the minimum detects a dominating point exactly.
  return res.value == target;
}

/// Ids of the generators spanning the smallest face of the hull containing
/// u: exactly those points that receive positive weight in some convex
/// representation of u.  Throws HullMembershipError if u is outside.
inline std::vector<std::size_t> minimal_face(const std::vector<RatVec>& points,
                                             const RatVec& u) {
  std::optional<RatVec> base = hull_weights(points, u);
  if (!base.has_value())
    throw HullMembershipError("minimal_face: point outside the convex hull");
  std::set<std::size_t> members;
  for (std::size_t i = 0; i < points.size(); ++i)
    if ((*base)[i] > 0) members.insert(i);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (members.count(i)) continue;
    LinearProgram lp = representation_lp(points, u);
    lp.sense = Sense::Maximize;
    lp.objective[i] = Rat(1);
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::Optimal)
      throw InvariantViolation("minimal_face: weight LP not optimal");
    if (res.value > 0) members.insert(i);
  }
  return std::vector<std::size_t>(members.begin(), members.end());
}

namespace detail {

// Widest-margin nonnegative supporting normal at u for the given points:
// maximise t subject to sum(b) = 1, b >= 0, b . (p - u) >= 0 for all p,
// b . (points[i] - u) >= t for i in cut, and b_j >= t when positive is set.
// Returns (t*, b*); nullopt iff no nonnegative supporting normal exists.
// Callers must keep the objective bounded: cut nonempty or positive set.
inline std::optional<std::pair<Rat, RatVec>> widest_margin_normal(
    const std::vector<RatVec>& points, const RatVec& u,
    const std::vector<std::size_t>& cut, bool positive) {
  const std::size_t dim = u.size();
  LinearProgram lp(dim + 1);  // b_0..b_{dim-1}, then t free
  for (std::size_t j = 0; j < dim; ++j) lp.set_lower(j, Rat(0));
  lp.sense = Sense::Maximize;
  lp.objective[dim] = Rat(1);
  RatVec sum_row(dim + 1, Rat(1));
  sum_row[dim] = Rat(0);  // t is not part of the normalisation
  lp.add_row(std::move(sum_row), Rel::Eq, Rat(1));
  for (const RatVec& p : points) {
    RatVec row(dim + 1, Rat(0));
    for (std::size_t j = 0; j < dim; ++j) row[j] = p[j] - u[j];
    lp.add_row(std::move(row), Rel::Ge, Rat(0));
  }
  for (std::size_t i : cut) {
    RatVec row(dim + 1, Rat(0));
    for (std::size_t j = 0; j < dim; ++j) row[j] = points[i][j] - u[j];
    row[dim] = Rat(-1);
    lp.add_row(std::move(row), Rel::Ge, Rat(0));
  }
  if (positive)
    for (std::size_t j = 0; j < dim; ++j) {
      RatVec row(dim + 1, Rat(0));
      row[j] = Rat(1);
      row[dim] = Rat(-1);
      lp.add_row(std::move(row), Rel::Ge, Rat(0));
    }
  LpResult res = solve_lp(lp);
  if (res.status == LpStatus::Infeasible) return std::nullopt;
  if (res.status != LpStatus::Optimal)
    throw InvariantViolation("support search: margin LP unbounded");
  RatVec b(res.point.begin(), res.point.begin() + dim);
  return std::make_pair(res.value, std::move(b));
}

}  // namespace detail

/// Builds a nested supporting-hyperplane certificate for the Pareto point u
/// of the given points whose planes intersect the hull in exactly the
/// minimal face containing u.  Each stage asks for the widest-margin
/// nonnegative supporting normal with strict clearance of every point off
/// the minimal face: if the margin extends to the normal components the
/// chain ends there, otherwise the plane only trims the off-face points and
/// the chain continues on what is left.  Throws HullMembershipError when u
/// is outside the hull and CertificateStall when no chain exists (u not
/// Pareto, for instance).
inline Certificate support_certificate(const std::vector<RatVec>& points,
                                       const RatVec& u) {
  check_uniform_dimension(points, u);
  const std::size_t dim = u.size();
  const std::vector<std::size_t> face = minimal_face(points, u);
  std::vector<std::size_t> current(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) current[i] = i;

  Certificate cert;
  cert.w_star = u;
  while (true) {
    if (cert.planes.size() >= dim)
      throw CertificateStall("support_certificate: plane budget exhausted");
    const std::vector<RatVec> pts = select_points(points, current);
    std::vector<std::size_t> cut;  // positions of survivors off the face
    for (std::size_t i = 0; i < current.size(); ++i)
      if (!std::binary_search(face.begin(), face.end(), current[i]))
        cut.push_back(i);

    std::optional<std::pair<Rat, RatVec>> sharp =
        detail::widest_margin_normal(pts, u, cut, /*positive=*/true);
    if (!sharp.has_value())
      throw CertificateStall(
          "support_certificate: no nonnegative supporting normal");
    if (sharp->first > 0) {
      // Strictly positive normal clear of every off-face point: since u
      // sits in the relative interior of its minimal face, the face itself
      // stays on the plane, so this one plane pins it.
      const RatVec& b = sharp->second;
      cert.planes.push_back({b, dot(b, u)});
      break;
    }
    if (cut.empty())  // u is not Pareto within its own minimal face
      throw CertificateStall("support_certificate: no separating normal");
    // No single strictly positive plane works yet: settle for a nonnegative
    // one that still clears the off-face points, and keep going on the face.
    std::optional<std::pair<Rat, RatVec>> wide =
        detail::widest_margin_normal(pts, u, cut, /*positive=*/false);
    if (!wide.has_value() || wide->first <= 0)
      throw CertificateStall("support_certificate: no separating normal");
    RatVec b = std::move(wide->second);
    Rat offset = dot(b, u);
    std::vector<std::size_t> next;
    for (std::size_t id : current)
      if (dot(b, points[id]) == offset) next.push_back(id);
    cert.planes.push_back({std::move(b), std::move(offset)});
    current = std::move(next);
  }

  const Hyperplane& last = cert.planes.back();
  for (std::size_t id : current)
    if (dot(last.normal, points[id]) == last.offset) cert.active.push_back(id);
  return cert;
}

/// Checks a certificate against its point set from scratch.  All conditions
/// are exact; every failed condition contributes one reason.
inline VerifyReport verify_certificate(const std::vector<RatVec>& points,
                                       const RatVec& u,
                                       const Certificate& cert) {
  VerifyReport report;
  auto fail = [&report](const std::string& reason) {
    report.reasons.push_back(reason);
  };

  if (points.empty()) {
    fail("empty point set");
    return report;
  }
  const std::size_t dim = u.size();
  for (const RatVec& p : points)
    if (p.size() != dim) {
      fail("point dimension mismatch");
      return report;
    }
  if (cert.w_star != u) fail("certified point differs from query point");
  if (cert.planes.empty() || cert.planes.size() > dim) {
    fail("plane count out of range");
    return report;
  }
  for (std::size_t s = 0; s < cert.planes.size(); ++s)
    if (cert.planes[s].normal.size() != dim) {
      fail("plane dimension mismatch");
      return report;
    }

  std::vector<std::size_t> current(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) current[i] = i;
  for (std::size_t s = 0; s < cert.planes.size(); ++s) {
    const Hyperplane& plane = cert.planes[s];
    const std::string stage = "plane " + std::to_string(s + 1);
    Rat sum(0);
    for (const Rat& c : plane.normal) {
      if (c < 0) fail(stage + ": normal has a negative component");
      sum += c;
    }
    if (sum != 1) fail(stage + ": normal components do not sum to 1");
    if (dot(plane.normal, u) != plane.offset)
      fail("support equality fails at u (" + stage + ")");
    std::vector<std::size_t> next;
    for (std::size_t id : current) {
      Rat v = dot(plane.normal, points[id]);
      if (v < plane.offset)
        fail(stage + ": point " + std::to_string(id) +
             " falls below the plane");
      else if (v == plane.offset)
        next.push_back(id);
    }
    current = std::move(next);
  }
  for (const Rat& c : cert.planes.back().normal)
    if (c <= 0) {
      fail("final normal not strictly positive");
      break;
    }

  std::vector<std::size_t> active = cert.active;
  std::sort(active.begin(), active.end());
  if (active != current)
    fail("active set differs from the plane intersection");
  try {
    if (active != minimal_face(points, u))
      fail("active set is not the minimal face of u");
  } catch (const HullMembershipError&) {
    fail("certified point outside the convex hull");
  }

  report.ok = report.reasons.empty();
  return report;
}

/// Outcome of probing one boundary point of a disk-plus-vertical-ray set for
/// a nonnegative supporting hyperplane that the ray then violates.
struct DiskReport {
  RatVec normal;        // unique supporting normal at u, normalised to sum 1
  Rat offset;           // normal . u
  bool normal_nonneg;   // both components >= 0 after normalisation
  bool violated;        // ray base beats the offset under the 0 * inf rule
  Rat violation_value;  // value of the plane functional at the ray base
  std::string text;     // human-readable summary
};

/// Example geometry: conv(disk centered at `center` with radius `radius`,
/// vertical segment {inf} x [ray_lo, ray_hi]).  At a boundary point u of the
/// disk, the supporting normal is unique; if its first component is zero the
/// plane evaluates finitely on the ray (0 * inf = 0) and can be violated
/// there, showing that supporting hyperplanes need not extend to sets with
/// infinite coordinates.
inline DiskReport disk_counterexample(const RatVec& center, const Rat& radius,
                                      const RatVec& u, const Rat& ray_lo,
                                      const Rat& ray_hi) {
  if (center.size() != 2 || u.size() != 2)
    throw std::invalid_argument("disk_counterexample: expects points in R^2");
  if (radius <= 0)
    throw std::invalid_argument("disk_counterexample: radius must be positive");
  if (ray_lo > ray_hi)
    throw std::invalid_argument("disk_counterexample: empty ray segment");
  RatVec inward = center - u;
  if (dot(inward, inward) != radius * radius)
    throw std::invalid_argument(
        "disk_counterexample: u is not on the disk boundary");

  DiskReport rep;
  Rat scale = inward[0] + inward[1];
  std::ostringstream text;
  if (scale <= 0) {
    // The unique supporting normal cannot be normalised to a nonnegative
    // sum-one vector; no violation probe applies.
    rep.normal = inward;
    rep.offset = dot(inward, u);
    rep.normal_nonneg = false;
    rep.violated = false;
    rep.violation_value = Rat(0);
    text << "no nonnegative supporting normal at ("
         << format_rational(u[0]) << ", " << format_rational(u[1]) << ")";
    rep.text = text.str();
    return rep;
  }
  rep.normal = {inward[0] / scale, inward[1] / scale};
  rep.offset = dot(rep.normal, u);
  rep.normal_nonneg = rep.normal[0] >= 0 && rep.normal[1] >= 0;
  text << "b = (" << format_rational(rep.normal[0]) << ", "
       << format_rational(rep.normal[1]) << ")\n";
  text << "beta = " << format_rational(rep.offset) << "\n";
  if (!rep.normal_nonneg) {
    rep.violated = false;
    rep.violation_value = Rat(0);
    text << "normal has a negative component; no violation probe";
  } else if (rep.normal[0] == 0) {
    // Plane value at (inf, ray_lo) is b_1 * ray_lo since 0 * inf = 0.
    rep.violation_value = rep.normal[1] * ray_lo;
    rep.violated = rep.violation_value < rep.offset;
    if (rep.violated)
      text << "violated by (inf, " << format_rational(ray_lo)
           << "): " << format_rational(rep.violation_value) << " < "
           << format_rational(rep.offset);
    else
      text << "not violated on the ray";
  } else {
    // First component positive: the plane evaluates to inf on the ray.
    rep.violated = false;
    rep.violation_value = Rat(0);
    text << "no counterexample: plane is infinite on the ray";
  }
  rep.text = text.str();
  return rep;
}

}  // namespace mixopt
