#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mixopt/ext_real.hpp"
#include "mixopt/rational.hpp"

namespace mixopt {

/// One pure point of the convex set: its id is its index in Instance::atoms,
/// its cost vector w has length J+1 (w[0] objective, w[1..J] constraints).
struct Atom {
  PerfVec w;
};

/// Minimize W_0 over mixtures of the atoms subject to W_j <= d[j-1] for
/// j = 1..J. The convex set is the full mixture simplex over the atoms; its
/// extreme points are exactly the one-atom (Dirac) mixtures.
struct Instance {
  std::vector<Atom> atoms;
  RatVec d;

  Instance() = default;
  Instance(std::vector<Atom> atoms_, RatVec d_)
      : atoms(std::move(atoms_)), d(std::move(d_)) {
    validate();
  }

  std::size_t J() const { return d.size(); }
  std::size_t num_atoms() const { return atoms.size(); }

  void validate() const {
    if (atoms.empty()) throw std::invalid_argument("Instance: no atoms");
    for (const Atom& a : atoms)
      if (a.w.size() != d.size() + 1)
        throw std::invalid_argument("Instance: atom cost vector length != J+1");
  }
};

/// Sparse convex combination of atoms: strictly positive weights summing to
/// one, atom ids strictly increasing.
struct Mixture {
  std::vector<std::pair<std::size_t, Rat>> support;

  static Mixture dirac(std::size_t atom_id) {
    Mixture m;
    m.support.emplace_back(atom_id, Rat(1));
    return m;
  }

  Rat weight_sum() const {
    Rat s = 0;
    for (const auto& [id, w] : support) s += w;
    return s;
  }
};

inline void validate_mixture(const Instance& instance, const Mixture& mixture) {
  if (mixture.support.empty())
    throw std::invalid_argument("Mixture: empty support");
  std::set<std::size_t> seen;
  Rat sum = 0;
  for (const auto& [id, w] : mixture.support) {
    if (id >= instance.num_atoms())
      throw std::invalid_argument("Mixture: invalid atom id");
    if (!seen.insert(id).second)
      throw std::invalid_argument("Mixture: duplicate atom id");
    if (sgn(w) <= 0)
      throw std::invalid_argument("Mixture: nonpositive weight");
    sum += w;
  }
  if (sum != 1) throw std::invalid_argument("Mixture: weights do not sum to 1");
}

/// Convex combination of extended reals: sum of weights[i] * values[i] under
/// 0 * inf = 0 and a + inf = inf. Weights must be nonnegative and sum to 1.
inline ExtReal ext_combine(const RatVec& weights, const PerfVec& values) {
  if (weights.size() != values.size())
    throw std::invalid_argument("ext_combine: length mismatch");
  Rat sum = 0;
  for (const Rat& w : weights) {
    if (sgn(w) < 0) throw std::invalid_argument("ext_combine: negative weight");
    sum += w;
  }
  if (sum != 1) throw std::invalid_argument("ext_combine: weights do not sum to 1");
  ExtReal acc{Rat(0)};
  for (std::size_t i = 0; i < weights.size(); ++i)
    acc = acc + values[i].scaled(weights[i]);
  return acc;
}

/// Performance vector W(x) = (W_0(x), ..., W_J(x)) of a mixture, exact.
inline PerfVec evaluate(const Instance& instance, const Mixture& mixture) {
  validate_mixture(instance, mixture);
  const std::size_t dim = instance.J() + 1;
  PerfVec out;
  out.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    ExtReal acc{Rat(0)};
    for (const auto& [id, w] : mixture.support)
      acc = acc + instance.atoms[id].w[j].scaled(w);
    out.push_back(acc);
  }
  return out;
}

/// True iff W_j(mixture) <= d_j for every j = 1..J (vacuous when J = 0).
inline bool is_feasible(const Instance& instance, const Mixture& mixture) {
  PerfVec w = evaluate(instance, mixture);
  for (std::size_t j = 1; j <= instance.J(); ++j)
    if (!(w[j] <= ExtReal(instance.d[j - 1]))) return false;
  return true;
}

/// Ids of atoms whose cost vector is finite on every listed coordinate,
/// in increasing id order.
inline std::vector<std::size_t> finite_atoms(const Instance& instance,
                                             const std::vector<std::size_t>& coords) {
  for (std::size_t c : coords)
    if (c > instance.J())
      throw std::invalid_argument("finite_atoms: coordinate out of range");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < instance.num_atoms(); ++i) {
    bool ok = true;
    for (std::size_t c : coords)
      if (instance.atoms[i].w[c].is_infinite()) {
        ok = false;
        break;
      }
    if (ok) out.push_back(i);
  }
  return out;
}

/// Ids of atoms finite on every coordinate 0..J.
inline std::vector<std::size_t> fully_finite_atoms(const Instance& instance) {
  std::vector<std::size_t> coords(instance.J() + 1);
  for (std::size_t c = 0; c <= instance.J(); ++c) coords[c] = c;
  return finite_atoms(instance, coords);
}

/// Ids of atoms finite on the constraint coordinates 1..J. Only these can
/// carry positive weight in a feasible mixture.
inline std::vector<std::size_t> constraint_finite_atoms(const Instance& instance) {
  std::vector<std::size_t> coords(instance.J());
  for (std::size_t c = 1; c <= instance.J(); ++c) coords[c - 1] = c;
  return finite_atoms(instance, coords);
}

/// Finite atom cost vectors for the given ids, as plain rational vectors.
inline std::vector<RatVec> atom_vectors(const Instance& instance,
                                        const std::vector<std::size_t>& ids) {
  std::vector<RatVec> out;
  out.reserve(ids.size());
  for (std::size_t id : ids) out.push_back(finite_values(instance.atoms[id].w));
  return out;
}

}  // namespace mixopt
