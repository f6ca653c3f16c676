// Command-line surface: solve/verify instance files, generate random
// instances, solve constrained MDPs, and run the boundary-point demo.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixopt/errors.hpp"
#include "mixopt/gen.hpp"
#include "mixopt/io.hpp"
#include "mixopt/mdp.hpp"
#include "mixopt/oracle.hpp"
#include "mixopt/pareto.hpp"
#include "mixopt/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInconsistent = 2;
constexpr int kExitVerifyFailed = 3;

mixopt::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return mixopt::json::parse(in);
}

int run_solve(const std::string& input, const std::string& output) {
  mixopt::Instance instance = mixopt::instance_from_json(load_json(input));
  std::optional<mixopt::Solution> sol = mixopt::solve(instance);
  std::ofstream out(output);
  if (!out) throw std::invalid_argument("cannot write '" + output + "'");
  out << mixopt::solution_to_json(sol).dump(2) << "\n";
  return sol.has_value() ? kExitOk : kExitInconsistent;
}

// Re-derives every claim of the solution file from the instance: structural
// mixture validity, feasibility, attained value, optimality against the
// independent LP, and the supporting-hyperplane certificate.
int run_verify(const std::string& input, const std::string& solution_path) {
  using namespace mixopt;
  Instance instance = instance_from_json(load_json(input));
  std::optional<Solution> sol = solution_from_json(load_json(solution_path));

  bool all_ok = true;
  auto check = [&all_ok](bool ok, const std::string& ok_label,
                         const std::string& fail_message) {
    if (ok)
      std::cout << "ok: " << ok_label << "\n";
    else {
      std::cout << "FAIL: " << fail_message << "\n";
      all_ok = false;
    }
    return ok;
  };

  std::optional<ExtReal> truth = oracle_optimal(instance);
  if (!sol.has_value()) {
    check(!truth.has_value(), "instance is inconsistent as claimed",
          "instance is consistent but the solution claims inconsistent");
    return all_ok ? kExitOk : kExitVerifyFailed;
  }

  bool ids_ok = !sol->mixture.support.empty();
  Rat weight_sum(0);
  for (std::size_t a = 0; a < sol->mixture.support.size(); ++a) {
    const auto& [id, weight] = sol->mixture.support[a];
    if (id >= instance.num_atoms() || weight <= 0) ids_ok = false;
    for (std::size_t b = a + 1; b < sol->mixture.support.size(); ++b)
      if (sol->mixture.support[b].first == id) ids_ok = false;
    weight_sum += weight;
  }
  check(ids_ok, "mixture atoms valid and weights positive",
        "mixture atoms invalid or weights not positive");
  bool sum_ok = check(weight_sum == 1, "mixture weights sum to 1",
                      "mixture weights do not sum to 1");
  check(sol->mixture.support.size() <= instance.J() + 1,
        "support within J+1", "support exceeds J+1");
  // The remaining checks evaluate the mixture, which requires a structurally
  // valid one.
  if (!ids_ok || !sum_ok) return kExitVerifyFailed;

  check(is_feasible(instance, sol->mixture), "mixture is feasible",
        "mixture violates a constraint bound");
  PerfVec achieved = evaluate(instance, sol->mixture);
  check(achieved[0] == sol->value, "value attained by the mixture",
        "value does not match the mixture");
  check(truth.has_value() && *truth == sol->value, "value is optimal",
        truth.has_value() ? "value is not optimal"
                          : "instance is inconsistent");

  if (sol->certificate.has_value()) {
    const Certificate& cert = *sol->certificate;
    // The certificate speaks about the fully finite atoms; map its original
    // atom ids into that point list before checking it.
    std::vector<std::size_t> finite = fully_finite_atoms(instance);
    std::vector<RatVec> pts = atom_vectors(instance, finite);
    bool ids_map = true;
    Certificate local = cert;
    try {
      local = localize_certificate(cert, finite);
    } catch (const std::invalid_argument&) {
      ids_map = false;
    }
    if (check(ids_map, "certificate references finite atoms",
              "certificate references non-finite atoms")) {
      VerifyReport report = verify_certificate(pts, cert.w_star, local);
      std::string detail = "certificate rejected";
      for (const std::string& reason : report.reasons)
        detail += "; " + reason;
      check(report.ok, "certificate verified", detail);
      check(all_finite(achieved) && finite_values(achieved) == cert.w_star,
            "certified point matches the mixture performance",
            "certified point differs from the mixture performance");
    }
  } else {
    check(sol->branch != SolveBranch::Main, "certificate not required",
          "main-branch solution is missing its certificate");
  }
  return all_ok ? kExitOk : kExitVerifyFailed;
}

int run_gen(std::size_t atoms, std::size_t constraints, std::uint64_t seed,
            const std::string& inf_fraction) {
  mixopt::Instance instance = mixopt::generate_instance(
      atoms, constraints, seed, mixopt::parse_rational(inf_fraction));
  std::cout << mixopt::instance_to_json(instance).dump(2) << "\n";
  return kExitOk;
}

// Boundary-point probe on conv(disk, vertical ray at infinity): the unique
// supporting normal at u has first component 0, so the plane evaluates
// finitely on the ray and is violated there; restricting to finitely many
// boundary atoms restores a verifiable certificate.
int run_demo() {
  using namespace mixopt;
  DiskReport report = disk_counterexample(
      {Rat(1), Rat(3) / 2}, Rat(1) / 2, {Rat(1), Rat(1)}, Rat(0), Rat(2));
  std::cout << report.text << "\n";

  const std::vector<RatVec> finite_pts = {{Rat(1), Rat(1)},
                                          {Rat(1), Rat(2)},
                                          {Rat(1) / 2, Rat(3) / 2},
                                          {Rat(3) / 2, Rat(3) / 2}};
  const RatVec u = {Rat(1), Rat(1)};
  Certificate cert = support_certificate(finite_pts, u);
  VerifyReport verdict = verify_certificate(finite_pts, u, cert);
  if (!verdict.ok) {
    for (const std::string& reason : verdict.reasons)
      std::cerr << "error: " << reason << "\n";
    return kExitVerifyFailed;
  }
  std::cout << "finite restriction: certificate verified, k = " << cert.k()
            << " <= J+1 = " << u.size() << "\n";
  return kExitOk;
}

int run_mdp_solve(const std::string& input, const std::string& bounds) {
  using namespace mixopt;
  Mdp mdp = mdp_from_json(load_json(input));
  RatVec d;
  std::stringstream stream(bounds);
  std::string token;
  while (std::getline(stream, token, ','))
    if (!token.empty()) d.push_back(parse_rational(token));
  Instance instance = build_instance(mdp, d);
  std::optional<Solution> sol = solve(instance);
  std::cout << solution_to_json(sol).dump(2) << "\n";
  return sol.has_value() ? kExitOk : kExitInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver and certifier for constrained mixture optimization"};
  app.require_subcommand(1);

  std::string input, output, solution, bounds;
  std::string inf_fraction = "0";
  std::size_t atoms = 1, constraints = 0;
  std::uint64_t seed = 0;
  std::string demo_name;

  CLI::App* cmd_solve = app.add_subcommand("solve", "solve an instance file");
  cmd_solve->add_option("--input", input, "instance JSON file")->required();
  cmd_solve->add_option("--output", output, "solution JSON file")->required();

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "check a solution file against its instance");
  cmd_verify->add_option("--input", input, "instance JSON file")->required();
  cmd_verify->add_option("--solution", solution, "solution JSON file")
      ->required();

  CLI::App* cmd_gen =
      app.add_subcommand("gen", "emit a seeded random instance on stdout");
  cmd_gen->add_option("--atoms", atoms, "number of atoms")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_gen->add_option("--constraints", constraints, "number of bounds J")
      ->required();
  cmd_gen->add_option("--seed", seed, "generator seed")->required();
  cmd_gen->add_option("--inf-fraction", inf_fraction,
                      "probability of an infinite coordinate (rational)");

  CLI::App* cmd_demo =
      app.add_subcommand("demo", "run a named demonstration");
  cmd_demo->add_option("name", demo_name, "demo name (example1)")->required();

  CLI::App* cmd_mdp =
      app.add_subcommand("mdp-solve", "solve a constrained MDP file");
  cmd_mdp->add_option("--input", input, "MDP JSON file")->required();
  cmd_mdp->add_option("--bounds", bounds, "comma-separated bounds d1,d2,...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (app.got_subcommand(cmd_solve)) return run_solve(input, output);
    if (app.got_subcommand(cmd_verify)) return run_verify(input, solution);
    if (app.got_subcommand(cmd_gen))
      return run_gen(atoms, constraints, seed, inf_fraction);
    if (app.got_subcommand(cmd_demo)) {
      if (demo_name != "example1")
        throw std::invalid_argument("unknown demo '" + demo_name + "'");
      return run_demo();
    }
    if (app.got_subcommand(cmd_mdp)) return run_mdp_solve(input, bounds);
  } catch (const mixopt::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
