#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mixopt/caratheodory.hpp"
#include "mixopt/errors.hpp"
#include "mixopt/ext_real.hpp"
#include "mixopt/hull.hpp"
#include "mixopt/instance.hpp"
#include "mixopt/pareto.hpp"
#include "mixopt/rational.hpp"

namespace mixopt {

enum class SolveBranch {
  Main,                 // finite value, certified Pareto optimum
  DegenerateJ0,         // infinite value, no constraints
  DegenerateRecursive,  // infinite value, solved through a reduced instance
};

/// Full solver output: an optimal mixture with at most J+1 support atoms,
/// the achieved value, and (on the main branch) a supporting-hyperplane
/// certificate whose `active` entries are original atom ids.
struct Solution {
  Mixture mixture;
  ExtReal value;
  std::optional<Certificate> certificate;
  SolveBranch branch{SolveBranch::Main};
};

/// Re-indexes a certificate's active set from original atom ids back to
/// positions within `ids` (the fully finite atom list the certificate's
/// planes speak about); inverse of the mapping applied when a Solution is
/// assembled.  Throws if an active id does not appear in `ids`.
inline Certificate localize_certificate(Certificate cert,
                                        const std::vector<std::size_t>& ids) {
  for (std::size_t& id : cert.active) {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end())
      throw std::invalid_argument(
          "localize_certificate: active id is not a listed atom");
    id = static_cast<std::size_t>(it - ids.begin());
  }
  return cert;
}

/// Lowest id of an atom whose performance vector is finite and equals w.
inline std::size_t lift(const Instance& instance, const RatVec& w) {
  for (std::size_t i = 0; i < instance.num_atoms(); ++i) {
    const PerfVec& a = instance.atoms[i].w;
    if (a.size() != w.size() || !all_finite(a)) continue;
    if (finite_values(a) == w) return i;
  }
  throw NoLiftFound("lift: no atom attains the requested performance vector");
}

namespace detail {

inline void check_solution(const Instance& instance, const Solution& sol) {
  validate_mixture(instance, sol.mixture);
  if (sol.mixture.support.size() > instance.J() + 1)
    throw InvariantViolation("solve: support exceeds J+1");
  if (!is_feasible(instance, sol.mixture))
    throw InvariantViolation("solve: produced an infeasible mixture");
  PerfVec achieved = evaluate(instance, sol.mixture);
  if (achieved[0] != sol.value)
    throw InvariantViolation("solve: mixture does not attain the value");
}

inline Solution solve_main(const Instance& instance, const Rat& d0) {
  const RatVec w_star = detail::pareto_point_at(instance, d0);
  const std::vector<std::size_t> finite = fully_finite_atoms(instance);
  const std::vector<RatVec> pts = atom_vectors(instance, finite);

  Certificate cert = support_certificate(pts, w_star);
  if (cert.active != minimal_face(pts, w_star))
    throw InvariantViolation("solve: certificate misses the minimal face");

  // Decompose w_star over the vertices of its minimal face; the face has
  // dimension at most J, so the support stays within J+1.
  const std::vector<RatVec> face_pts = select_points(pts, cert.active);
  Decomposition dec = decompose(face_pts, w_star);

  Solution sol;
  sol.value = ExtReal(d0);
  sol.branch = SolveBranch::Main;
  for (const auto& [local, weight] : dec.parts)
    sol.mixture.support.emplace_back(lift(instance, face_pts[local]), weight);
  std::sort(sol.mixture.support.begin(), sol.mixture.support.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  // Report certificate membership in original atom ids.
  for (std::size_t& id : cert.active) id = finite[id];
  sol.certificate = std::move(cert);

  check_solution(instance, sol);
  return sol;
}

inline Solution solve_degenerate(const Instance& instance);

inline Solution dispatch(const Instance& instance, const ExtReal& value) {
  return value.is_finite() ? solve_main(instance, value.value())
                           : solve_degenerate(instance);
}

}  // namespace detail

/// Solves the instance exactly.  Returns nullopt iff no feasible mixture
/// exists; otherwise the mixture is optimal with support at most J+1.
inline std::optional<Solution> solve(const Instance& instance) {
  std::optional<ExtReal> value = optimal_value(instance);
  if (!value.has_value()) return std::nullopt;
  return detail::dispatch(instance, *value);
}

namespace detail {

// Infinite optimal value.  With no constraints any single atom is optimal;
// otherwise drop the objective coordinate and the first bound, solve the
// reduced instance, and reuse its mixture.  The reduction is sound exactly
// when the reduced value is finite and within the dropped bound, so both
// facts are asserted.
inline Solution solve_degenerate(const Instance& instance) {
  if (instance.J() == 0) {
    Solution sol;
    sol.mixture = Mixture::dirac(0);
    sol.value = ExtReal::infinity();
    sol.branch = SolveBranch::DegenerateJ0;
    check_solution(instance, sol);
    return sol;
  }

  Instance reduced;
  reduced.d.assign(instance.d.begin() + 1, instance.d.end());
  for (const Atom& atom : instance.atoms) {
    Atom shifted;
    shifted.w.assign(atom.w.begin() + 1, atom.w.end());
    reduced.atoms.push_back(std::move(shifted));
  }

  std::optional<Solution> inner = solve(reduced);
  if (!inner.has_value())
    throw InvariantViolation("degenerate branch: reduced instance inconsistent");
  if (inner->value.is_infinite())
    throw InvariantViolation("degenerate branch: reduced value is infinite");
  if (ExtReal(instance.d[0]) < inner->value)
    throw InvariantViolation("degenerate branch: reduced value exceeds the bound");

  Solution sol;
  sol.mixture = inner->mixture;  // atom ids coincide across the reduction
  sol.value = ExtReal::infinity();
  sol.branch = SolveBranch::DegenerateRecursive;
  check_solution(instance, sol);
  return sol;
}

}  // namespace detail

/// Degenerate branch entry point for instances whose value is infinite.
inline Solution degenerate_solve(const Instance& instance) {
  std::optional<ExtReal> value = optimal_value(instance);
  if (!value.has_value())
    throw std::invalid_argument("degenerate_solve: instance is inconsistent");
  if (value->is_finite())
    throw std::invalid_argument("degenerate_solve: optimal value is finite");
  return detail::solve_degenerate(instance);
}

}  // namespace mixopt
