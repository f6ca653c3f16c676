#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mixopt/errors.hpp"
#include "mixopt/instance.hpp"
#include "mixopt/linalg.hpp"
#include "mixopt/rational.hpp"

namespace mixopt {

inline constexpr std::size_t kMaxPolicies = 4096;

/// Finite discounted Markov decision process with several cost criteria.
/// Transitions and costs are indexed [state][action]; cost criterion 0 is
/// the objective, criteria 1..J become the constrained coordinates.
struct Mdp {
  std::vector<std::size_t> actions;             // action count per state
  std::vector<std::vector<RatVec>> transition;  // [s][a] -> next-state law
  std::vector<std::vector<RatVec>> cost;        // [j][s] -> cost per action
  Rat discount;
  RatVec initial;  // initial state distribution

  std::size_t num_states() const { return actions.size(); }
  std::size_t num_criteria() const { return cost.size(); }

  void validate() const {
    const std::size_t n = num_states();
    if (n == 0) throw std::invalid_argument("mdp: no states");
    if (discount <= 0 || discount >= 1)
      throw std::invalid_argument("mdp: discount must lie in (0, 1)");
    if (num_criteria() == 0)
      throw std::invalid_argument("mdp: no cost criteria");
    if (transition.size() != n || initial.size() != n)
      throw std::invalid_argument("mdp: state dimension mismatch");
    Rat init_sum(0);
    for (const Rat& p : initial) {
      if (p < 0) throw std::invalid_argument("mdp: negative initial weight");
      init_sum += p;
    }
    if (init_sum != 1)
      throw std::invalid_argument("mdp: initial distribution must sum to 1");
    for (std::size_t s = 0; s < n; ++s) {
      if (actions[s] == 0)
        throw std::invalid_argument("mdp: state without actions");
      if (transition[s].size() != actions[s])
        throw std::invalid_argument("mdp: transition action mismatch");
      for (const RatVec& law : transition[s]) {
        if (law.size() != n)
          throw std::invalid_argument("mdp: transition row dimension");
        Rat sum(0);
        for (const Rat& p : law) {
          if (p < 0) throw std::invalid_argument("mdp: negative probability");
          sum += p;
        }
        if (sum != 1)
          throw std::invalid_argument("mdp: transition row must sum to 1");
      }
    }
    for (const auto& criterion : cost) {
      if (criterion.size() != n)
        throw std::invalid_argument("mdp: cost state dimension");
      for (std::size_t s = 0; s < n; ++s)
        if (criterion[s].size() != actions[s])
          throw std::invalid_argument("mdp: cost action dimension");
    }
  }
};

/// Deterministic stationary policy: one action index per state.
using Policy = std::vector<std::size_t>;

/// All deterministic stationary policies in lexicographic order.
inline std::vector<Policy> enumerate_policies(const Mdp& mdp) {
  mdp.validate();
  std::size_t total = 1;
  for (std::size_t a : mdp.actions) {
    if (a > kMaxPolicies / total)
      throw SizeLimitError("enumerate_policies: too many policies");
    total *= a;
  }
  std::vector<Policy> out;
  out.reserve(total);
  Policy pi(mdp.num_states(), 0);
  while (true) {
    out.push_back(pi);
    std::size_t s = mdp.num_states();
    while (s > 0) {
      --s;
      if (++pi[s] < mdp.actions[s]) break;
      pi[s] = 0;
      if (s == 0) return out;
    }
  }
}

/// Expected discounted cost of the policy under every criterion, computed
/// exactly from the linear system (I - discount * P_pi) v = c_pi.
inline RatVec evaluate_policy(const Mdp& mdp, const Policy& pi) {
  mdp.validate();
  const std::size_t n = mdp.num_states();
  if (pi.size() != n)
    throw std::invalid_argument("evaluate_policy: policy length mismatch");
  for (std::size_t s = 0; s < n; ++s)
    if (pi[s] >= mdp.actions[s])
      throw std::invalid_argument("evaluate_policy: action out of range");

  RatMat system(n, RatVec(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      system[s][t] = -mdp.discount * mdp.transition[s][pi[s]][t];
      if (s == t) system[s][t] += 1;
    }

  RatVec performance(mdp.num_criteria());
  for (std::size_t j = 0; j < mdp.num_criteria(); ++j) {
    RatVec rhs(n);
    for (std::size_t s = 0; s < n; ++s) rhs[s] = mdp.cost[j][s][pi[s]];
    RatVec v = solve_linear_system(system, rhs);
    performance[j] = dot(mdp.initial, v);
  }
  return performance;
}

/// Mixture-optimisation instance whose atoms are the performance vectors of
/// the deterministic stationary policies, in enumeration order, bounded by d.
inline Instance build_instance(const Mdp& mdp, const RatVec& d) {
  mdp.validate();
  if (d.size() + 1 != mdp.num_criteria())
    throw std::invalid_argument("build_instance: bounds/criteria mismatch");
  Instance instance;
  instance.d = d;
  for (const Policy& pi : enumerate_policies(mdp))
    instance.atoms.push_back(Atom{to_perf_vec(evaluate_policy(mdp, pi))});
  instance.validate();
  return instance;
}

}  // namespace mixopt
