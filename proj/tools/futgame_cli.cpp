// Command-line front end: solve scenarios, dump first-step payoff tables,
// and check the solvers against the brute-force oracles.

#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "futgame/futgame.hpp"

namespace {

using namespace futgame;

std::string payoff_line(const std::vector<Money>& wealth) {
  std::string out = "(";
  for (std::size_t i = 0; i < wealth.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(wealth[i]);
  }
  out += ")";
  return out;
}

std::string sequence_line(const std::vector<Control>& controls) {
  std::string out;
  for (const Control& control : controls) {
    if (!out.empty()) out += " ";
    out += to_string(control);
  }
  return out;
}

TrajectoryFormat parse_format(const std::string& name) {
  return name == "tabular" ? TrajectoryFormat::Tabular
                           : TrajectoryFormat::Structured;
}

int run_solve_dp(const std::string& scenario_path, int agent,
                 const std::string& out_path, const std::string& format) {
  Scenario scenario = load_scenario(scenario_path);
  DpSolution solution = solve_deterministic(scenario, agent);
  std::cout << "agent " << agent << " terminal wealth: "
            << solution.optimal_value << ", efficiency: "
            << efficiency(solution.optimal_value,
                          scenario.agents[static_cast<std::size_t>(agent)]
                              .initial_capital)
            << ", controls: " << sequence_line(solution.control_sequence)
            << "\n";
  if (!out_path.empty()) {
    write_trajectory(scenario, solution.trajectory, out_path,
                     parse_format(format));
  }
  return 0;
}

int run_solve_game(const std::string& scenario_path,
                   const std::string& out_path, const std::string& format,
                   int threads) {
  Scenario scenario = load_scenario(scenario_path);
  Trajectory trajectory = solve_game(scenario, GameOptions{threads});
  std::cout << "terminal payoffs: " << payoff_line(trajectory.terminal_wealth)
            << "\n";
  if (!out_path.empty()) {
    write_trajectory(scenario, trajectory, out_path, parse_format(format));
  }
  return 0;
}

int run_enumerate(const std::string& scenario_path) {
  Scenario scenario = load_scenario(scenario_path);
  Trajectory trajectory = solve_game(scenario);
  const StepDiagnostics& diag = *trajectory.steps.front().diagnostics;

  std::cout << "first-step payoff table: " << diag.profiles.size()
            << " profile(s), " << scenario.num_agents() << " agent(s)\n";
  for (std::size_t x = 0; x < diag.profiles.size(); ++x) {
    const bool in_set =
        std::find(diag.compromise_indices.begin(),
                  diag.compromise_indices.end(),
                  x) != diag.compromise_indices.end();
    std::cout << std::setw(4) << x << "  " << std::setw(18) << std::left
              << to_string(diag.profiles[x]) << std::right << " payoffs "
              << payoff_line(diag.payoffs[x]) << "  regret "
              << diag.regrets[x] << (in_set ? "  C_H" : "")
              << (x == diag.selected ? "  <- selected" : "") << "\n";
  }
  std::cout << "ideal point: " << payoff_line(diag.ideal) << "\n";
  std::cout << "compromise set size: " << diag.compromise_indices.size()
            << "\n";
  std::cout << "terminal payoffs: " << payoff_line(trajectory.terminal_wealth)
            << "\n";
  return 0;
}

struct DpOutcome {
  std::optional<DpSolution> solution;  // empty when infeasible
};

int run_verify(const std::string& scenario_path, const std::string& mode,
               std::uint64_t cap) {
  Scenario scenario = load_scenario(scenario_path);

  if (mode == "normal-form") {
    std::optional<Trajectory> solver, reference;
    try {
      solver = solve_game(scenario);
    } catch (const InfeasibleError&) {}
    try {
      reference =
          oracle::brute_force_game(scenario, oracle::GameMode::NormalForm, cap);
    } catch (const InfeasibleError&) {}
    if (solver.has_value() != reference.has_value()) {
      std::cout << "MISMATCH: solver "
                << (solver ? "found a trajectory" : "reports infeasible")
                << " but the normal-form oracle "
                << (reference ? "found a trajectory" : "reports infeasible")
                << "\n";
      return 1;
    }
    if (solver && !paths_equal(*solver, *reference)) {
      std::cout << "MISMATCH: backward procedure "
                << payoff_line(solver->terminal_wealth)
                << " vs normal-form compromise "
                << payoff_line(reference->terminal_wealth) << "\n";
      return 1;
    }
    std::cout << "verify OK: terminal payoffs "
              << (solver ? payoff_line(solver->terminal_wealth)
                         : std::string("(infeasible)"))
              << " match the normal-form oracle\n";
    return 0;
  }

  // Per-step mode: game solver against the per-step oracle, then the DP
  // solver against exhaustive enumeration for every agent.
  std::optional<Trajectory> solver, reference;
  try {
    solver = solve_game(scenario);
  } catch (const InfeasibleError&) {}
  try {
    reference =
        oracle::brute_force_game(scenario, oracle::GameMode::PerStep, cap);
  } catch (const InfeasibleError&) {}
  if (solver.has_value() != reference.has_value()) {
    std::cout << "MISMATCH: solver "
              << (solver ? "found a trajectory" : "reports infeasible")
              << " but the per-step oracle "
              << (reference ? "found a trajectory" : "reports infeasible")
              << "\n";
    return 1;
  }
  if (solver && !paths_equal(*solver, *reference)) {
    std::cout << "MISMATCH: solve-game " << payoff_line(solver->terminal_wealth)
              << " vs per-step oracle "
              << payoff_line(reference->terminal_wealth) << "\n";
    return 1;
  }

  for (int agent = 0; agent < scenario.num_agents(); ++agent) {
    std::optional<DpSolution> fast, slow;
    try {
      fast = solve_deterministic(scenario, agent);
    } catch (const InfeasibleError&) {}
    try {
      slow = oracle::brute_force_dp(scenario, agent, {}, cap);
    } catch (const InfeasibleError&) {}
    if (fast.has_value() != slow.has_value()) {
      std::cout << "MISMATCH: dp solver and oracle disagree on feasibility "
                << "for agent " << agent << "\n";
      return 1;
    }
    if (fast && (fast->optimal_value != slow->optimal_value ||
                 fast->control_sequence != slow->control_sequence)) {
      std::cout << "MISMATCH: agent " << agent << " dp value "
                << fast->optimal_value << " controls "
                << sequence_line(fast->control_sequence) << " vs oracle "
                << slow->optimal_value << " controls "
                << sequence_line(slow->control_sequence) << "\n";
      return 1;
    }
  }

  std::cout << "verify OK: terminal payoffs "
            << (solver ? payoff_line(solver->terminal_wealth)
                       : std::string("(infeasible)"))
            << " match the per-step oracle; dp matches brute force for "
            << scenario.num_agents() << " agent(s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"futgame - deterministic futures-market game engine"};
  app.set_version_flag("--version", std::string("futgame ") + kVersion);
  app.require_subcommand(1);

  std::string scenario_path, out_path;
  std::string format = "structured";
  int agent = 0;
  int threads = 1;
  std::string mode = "per-step";
  std::uint64_t cap = oracle::kDefaultCap;

  CLI::App* solve_dp = app.add_subcommand(
      "solve-dp", "maximize one agent's terminal wealth by dynamic programming");
  solve_dp->add_option("--scenario", scenario_path, "scenario file")
      ->required();
  solve_dp->add_option("--agent", agent, "agent index (default 0)");
  solve_dp->add_option("--out", out_path, "write the trajectory to this file");
  solve_dp->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"structured", "tabular"}));

  CLI::App* solve_game_cmd = app.add_subcommand(
      "solve-game", "solve the n-agent game by backward compromise selection");
  solve_game_cmd->add_option("--scenario", scenario_path, "scenario file")
      ->required();
  solve_game_cmd->add_option("--out", out_path,
                             "write the trajectory to this file");
  solve_game_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"structured", "tabular"}));
  solve_game_cmd->add_option("--threads", threads,
                             "worker threads for the root node (default 1)")
      ->check(CLI::PositiveNumber);

  CLI::App* enumerate_cmd = app.add_subcommand(
      "enumerate", "dump the first-step payoff table with ideal point, "
                   "regrets and compromise set");
  enumerate_cmd->add_option("--scenario", scenario_path, "scenario file")
      ->required();

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "check the solvers against the brute-force oracles");
  verify_cmd->add_option("--scenario", scenario_path, "scenario file")
      ->required();
  verify_cmd->add_option("--mode", mode, "oracle mode (default per-step)")
      ->check(CLI::IsMember({"per-step", "normal-form"}));
  verify_cmd->add_option("--cap", cap, "enumeration cap for the oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve_dp->parsed()) {
      return run_solve_dp(scenario_path, agent, out_path, format);
    }
    if (solve_game_cmd->parsed()) {
      return run_solve_game(scenario_path, out_path, format, threads);
    }
    if (enumerate_cmd->parsed()) return run_enumerate(scenario_path);
    if (verify_cmd->parsed()) return run_verify(scenario_path, mode, cap);
  } catch (const ParseError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 3;
  } catch (const ValidationError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 3;
  } catch (const InfeasibleError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 4;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 2;
}
