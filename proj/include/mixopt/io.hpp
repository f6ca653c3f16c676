#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "mixopt/ext_real.hpp"
#include "mixopt/instance.hpp"
#include "mixopt/mdp.hpp"
#include "mixopt/pareto.hpp"
#include "mixopt/rational.hpp"
#include "mixopt/solver.hpp"

namespace mixopt {

using nlohmann::json;

// All numeric payloads travel as exact strings ("p/q", an integer string,
// or "inf"); plain JSON integers are accepted on input, floats never.

inline Rat rational_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer())
    return Rat(static_cast<long>(j.get<std::int64_t>()));
  throw std::invalid_argument(where + ": expected an exact rational");
}

inline ExtReal ext_real_from_json(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "inf")
    return ExtReal::infinity();
  return ExtReal(rational_from_json(j, where));
}

inline json rational_to_json(const Rat& r) { return format_rational(r); }

inline json ext_real_to_json(const ExtReal& v) { return v.str(); }

inline std::size_t index_from_json(const json& j, const std::string& where) {
  // is_number_integer covers both signed and unsigned storage; values built
  // in memory from int literals arrive signed even when nonnegative.
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw std::invalid_argument(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

// ---------------------------------------------------------------------------
// Instance files: {"J": n, "d": [...], "atoms": [{"w": [...]} ...]}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance: expected object");
  if (!j.contains("J") || !j.contains("d") || !j.contains("atoms"))
    throw std::invalid_argument("instance: requires J, d, atoms");
  const std::size_t J = index_from_json(j.at("J"), "instance.J");
  if (!j.at("d").is_array() || j.at("d").size() != J)
    throw std::invalid_argument("instance: d must list J bounds");
  if (!j.at("atoms").is_array() || j.at("atoms").empty())
    throw std::invalid_argument("instance: atoms must be a nonempty array");

  Instance instance;
  for (const json& entry : j.at("d"))
    instance.d.push_back(rational_from_json(entry, "instance.d"));
  for (const json& a : j.at("atoms")) {
    if (!a.is_object() || !a.contains("w") || !a.at("w").is_array() ||
        a.at("w").size() != J + 1)
      throw std::invalid_argument(
          "instance: each atom needs a w array of length J+1");
    Atom atom;
    for (const json& entry : a.at("w"))
      atom.w.push_back(ext_real_from_json(entry, "instance.atoms.w"));
    instance.atoms.push_back(std::move(atom));
  }
  instance.validate();
  return instance;
}

inline json instance_to_json(const Instance& instance) {
  json atoms = json::array();
  for (const Atom& atom : instance.atoms) {
    json w = json::array();
    for (const ExtReal& v : atom.w) w.push_back(ext_real_to_json(v));
    atoms.push_back(json{{"w", std::move(w)}});
  }
  json d = json::array();
  for (const Rat& bound : instance.d) d.push_back(rational_to_json(bound));
  return json{{"J", instance.J()}, {"d", std::move(d)},
              {"atoms", std::move(atoms)}};
}

// ---------------------------------------------------------------------------
// Solution files: {"status": "inconsistent"} or
// {"status": "optimal", "value": ..., "branch": ..., "mixture": [...],
//  "certificate": {...}?}.  Parsing is structural only; semantic checks
// (weights summing to 1, support bounds, optimality) belong to verification.

inline std::string branch_to_string(SolveBranch branch) {
  switch (branch) {
    case SolveBranch::Main: return "main";
    case SolveBranch::DegenerateJ0: return "degenerate_j0";
    case SolveBranch::DegenerateRecursive: return "degenerate_recursive";
  }
  throw std::invalid_argument("unknown branch");
}

inline SolveBranch branch_from_string(const std::string& s) {
  if (s == "main") return SolveBranch::Main;
  if (s == "degenerate_j0") return SolveBranch::DegenerateJ0;
  if (s == "degenerate_recursive") return SolveBranch::DegenerateRecursive;
  throw std::invalid_argument("solution: unknown branch '" + s + "'");
}

inline json solution_to_json(const std::optional<Solution>& sol) {
  if (!sol.has_value()) return json{{"status", "inconsistent"}};
  json mixture = json::array();
  for (const auto& [id, weight] : sol->mixture.support)
    mixture.push_back(
        json{{"atom", id}, {"weight", rational_to_json(weight)}});
  json out{{"status", "optimal"},
           {"value", ext_real_to_json(sol->value)},
           {"branch", branch_to_string(sol->branch)},
           {"mixture", std::move(mixture)}};
  if (sol->certificate.has_value()) {
    const Certificate& cert = *sol->certificate;
    json planes = json::array();
    for (const Hyperplane& plane : cert.planes) {
      json b = json::array();
      for (const Rat& c : plane.normal) b.push_back(rational_to_json(c));
      planes.push_back(
          json{{"b", std::move(b)}, {"beta", rational_to_json(plane.offset)}});
    }
    json w_star = json::array();
    for (const Rat& c : cert.w_star) w_star.push_back(rational_to_json(c));
    out["certificate"] = json{{"w_star", std::move(w_star)},
                              {"planes", std::move(planes)},
                              {"active", cert.active}};
  }
  return out;
}

inline std::optional<Solution> solution_from_json(const json& j) {
  if (!j.is_object() || !j.contains("status"))
    throw std::invalid_argument("solution: expected object with status");
  const std::string status = j.at("status").get<std::string>();
  if (status == "inconsistent") return std::nullopt;
  if (status != "optimal")
    throw std::invalid_argument("solution: unknown status '" + status + "'");
  if (!j.contains("value") || !j.contains("branch") || !j.contains("mixture"))
    throw std::invalid_argument("solution: requires value, branch, mixture");

  Solution sol;
  sol.value = ext_real_from_json(j.at("value"), "solution.value");
  sol.branch = branch_from_string(j.at("branch").get<std::string>());
  if (!j.at("mixture").is_array())
    throw std::invalid_argument("solution: mixture must be an array");
  for (const json& part : j.at("mixture")) {
    if (!part.is_object() || !part.contains("atom") || !part.contains("weight"))
      throw std::invalid_argument("solution: mixture entries need atom, weight");
    sol.mixture.support.emplace_back(
        index_from_json(part.at("atom"), "solution.mixture.atom"),
        rational_from_json(part.at("weight"), "solution.mixture.weight"));
  }
  if (j.contains("certificate")) {
    const json& c = j.at("certificate");
    if (!c.is_object() || !c.contains("w_star") || !c.contains("planes") ||
        !c.contains("active"))
      throw std::invalid_argument(
          "solution: certificate needs w_star, planes, active");
    Certificate cert;
    for (const json& entry : c.at("w_star"))
      cert.w_star.push_back(rational_from_json(entry, "certificate.w_star"));
    for (const json& p : c.at("planes")) {
      if (!p.is_object() || !p.contains("b") || !p.contains("beta"))
        throw std::invalid_argument("solution: planes need b, beta");
      Hyperplane plane;
      for (const json& entry : p.at("b"))
        plane.normal.push_back(rational_from_json(entry, "certificate.b"));
      plane.offset = rational_from_json(p.at("beta"), "certificate.beta");
      cert.planes.push_back(std::move(plane));
    }
    for (const json& entry : c.at("active"))
      cert.active.push_back(index_from_json(entry, "certificate.active"));
    sol.certificate = std::move(cert);
  }
  return sol;
}

// ---------------------------------------------------------------------------
// MDP files: {"states": N, "actions": [per-state counts], "P": [s][a][t],
//  "costs": [j][s][a], "gamma": "p/q", "initial": [rationals]}.

inline Mdp mdp_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("mdp: expected object");
  for (const char* key : {"states", "actions", "P", "costs", "gamma", "initial"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("mdp: missing ") + key);

  Mdp mdp;
  mdp.discount = rational_from_json(j.at("gamma"), "mdp.gamma");
  for (const json& entry : j.at("initial"))
    mdp.initial.push_back(rational_from_json(entry, "mdp.initial"));
  for (const json& entry : j.at("actions"))
    mdp.actions.push_back(index_from_json(entry, "mdp.actions"));
  if (index_from_json(j.at("states"), "mdp.states") != mdp.actions.size())
    throw std::invalid_argument("mdp: states does not match actions length");
  for (const json& per_state : j.at("P")) {
    std::vector<RatVec> rows;
    for (const json& per_action : per_state) {
      RatVec law;
      for (const json& entry : per_action)
        law.push_back(rational_from_json(entry, "mdp.P"));
      rows.push_back(std::move(law));
    }
    mdp.transition.push_back(std::move(rows));
  }
  for (const json& per_criterion : j.at("costs")) {
    std::vector<RatVec> rows;
    for (const json& per_state : per_criterion) {
      RatVec costs;
      for (const json& entry : per_state)
        costs.push_back(rational_from_json(entry, "mdp.costs"));
      rows.push_back(std::move(costs));
    }
    mdp.cost.push_back(std::move(rows));
  }
  mdp.validate();
  return mdp;
}

inline json mdp_to_json(const Mdp& mdp) {
  auto vec = [](const RatVec& v) {
    json out = json::array();
    for (const Rat& r : v) out.push_back(rational_to_json(r));
    return out;
  };
  json transition = json::array();
  for (const auto& per_state : mdp.transition) {
    json rows = json::array();
    for (const RatVec& law : per_state) rows.push_back(vec(law));
    transition.push_back(std::move(rows));
  }
  json cost = json::array();
  for (const auto& per_criterion : mdp.cost) {
    json rows = json::array();
    for (const RatVec& costs : per_criterion) rows.push_back(vec(costs));
    cost.push_back(std::move(rows));
  }
  return json{{"states", mdp.num_states()},
              {"actions", mdp.actions},
              {"P", std::move(transition)},
              {"costs", std::move(cost)},
              {"gamma", rational_to_json(mdp.discount)},
              {"initial", vec(mdp.initial)}};
}

}  // namespace mixopt
