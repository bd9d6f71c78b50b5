#pragma once

#include <atomic>
#include <cassert>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "futgame/compromise.hpp"
#include "futgame/errors.hpp"
#include "futgame/market.hpp"
#include "futgame/scenario.hpp"
#include "futgame/trajectory.hpp"
#include "futgame/types.hpp"
#include "futgame/wealth.hpp"

namespace futgame {

struct GameOptions {
  int threads = 1;  // parallelism for the root candidate evaluation
};

namespace detail {

struct GameNodeResult {
  std::vector<Money> payoffs;          // terminal wealths of the resolved subgame
  std::vector<JointControl> chain;     // selected joint controls, this node down
  std::vector<StepDiagnostics> diags;  // one per decision step on the chain
};

/// All joint controls in the product of per-agent admissible sets, in
/// canonical order (agent 0 most significant).
inline std::vector<JointControl> joint_candidates(
    const std::vector<std::vector<Control>>& admissible) {
  const std::size_t n = admissible.size();
  std::vector<std::size_t> index(n, 0);
  std::vector<JointControl> out;
  for (;;) {
    JointControl joint;
    joint.controls.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      joint.controls.push_back(admissible[i][index[i]]);
    }
    out.push_back(std::move(joint));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++index[i] < admissible[i].size()) break;
      index[i] = 0;
      if (i == 0) return out;
    }
  }
}

inline std::optional<GameNodeResult> game_solve_node(
    const Scenario& scenario, int k, const MarketState& state,
    const std::vector<Money>& capital, int threads);

/// Apply one joint control at step k and resolve its continuation. Returns
/// nothing when the branch is infeasible (an agent's wealth goes negative or
/// the child node has no admissible joint control).
inline std::optional<std::pair<std::vector<Money>, GameNodeResult>>
evaluate_candidate(const Scenario& scenario, int k, const MarketState& state,
                   const std::vector<Money>& capital,
                   const JointControl& joint) {
  const std::size_t n = scenario.agents.size();
  std::vector<Money> wealth(n);
  for (std::size_t i = 0; i < n; ++i) {
    wealth[i] =
        capital[i] - entry_cost(joint.controls[i], scenario.contracts);
  }
  MarketState next = step_prices(state, joint, scenario.transition);
  std::vector<Money> settled(n);
  for (std::size_t i = 0; i < n; ++i) {
    settled[i] = wealth[i] + settlement_revenue(joint.controls[i], state,
                                                next, scenario.contracts);
  }

  if (k + 1 == scenario.horizon) {
    if (scenario.enforce_terminal_nonneg) {
      for (Money w : settled) {
        if (w < 0) return std::nullopt;
      }
    }
    return std::make_pair(settled, GameNodeResult{settled, {}, {}});
  }

  auto child = game_solve_node(scenario, k + 1, next, settled, 1);
  if (!child) return std::nullopt;
  return std::make_pair(child->payoffs, std::move(*child));
}

inline std::optional<GameNodeResult> game_solve_node(
    const Scenario& scenario, int k, const MarketState& state,
    const std::vector<Money>& capital, int threads) {
  const std::size_t n = scenario.agents.size();

  std::vector<std::vector<Control>> admissible(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (capital[i] < 0) return std::nullopt;
    admissible[i] = admissible_controls(
        AgentState{capital[i], zero_control(scenario.contracts.size())}, 0,
        scenario.contracts, k == 1, scenario.require_trade_at_start);
    if (admissible[i].empty()) return std::nullopt;
  }

  std::vector<JointControl> candidates = joint_candidates(admissible);
  using Evaluated = std::pair<std::vector<Money>, GameNodeResult>;
  std::vector<std::optional<Evaluated>> slots(candidates.size());

  auto evaluate = [&](std::size_t index) {
    slots[index] =
        evaluate_candidate(scenario, k, state, capital, candidates[index]);
  };

  if (threads <= 1 || candidates.size() <= 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i) evaluate(i);
  } else {
    // Each worker claims candidate indices from a shared cursor; results go
    // into per-candidate slots, so scheduling cannot change the outcome.
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads),
                              candidates.size());
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        try {
          for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= candidates.size()) break;
            evaluate(i);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (std::thread& worker : pool) worker.join();
    if (failure) std::rethrow_exception(failure);
  }

  PayoffTable table;
  std::vector<GameNodeResult> children;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!slots[i]) continue;
    table.profiles.push_back(std::move(candidates[i]));
    table.payoffs.push_back(std::move(slots[i]->first));
    children.push_back(std::move(slots[i]->second));
  }
  if (table.payoffs.empty()) return std::nullopt;

  CompromiseResult comp = compromise_set(table);
  comp.selected = select_compromise(comp, table, scenario.tie_break);

  StepDiagnostics diag{table.profiles,       table.payoffs,
                       comp.ideal_point,     comp.regrets,
                       comp.set_indices,     comp.selected};

  GameNodeResult& chosen = children[comp.selected];
  GameNodeResult out;
  out.payoffs = table.payoffs[comp.selected];
  out.chain.reserve(1 + chosen.chain.size());
  out.chain.push_back(table.profiles[comp.selected]);
  out.chain.insert(out.chain.end(),
                   std::make_move_iterator(chosen.chain.begin()),
                   std::make_move_iterator(chosen.chain.end()));
  out.diags.reserve(1 + chosen.diags.size());
  out.diags.push_back(std::move(diag));
  out.diags.insert(out.diags.end(),
                   std::make_move_iterator(chosen.diags.begin()),
                   std::make_move_iterator(chosen.diags.end()));
  return out;
}

}  // namespace detail

/// Backward induction over the joint-control tree: at every node the
/// candidate joint controls are scored by their already-resolved
/// continuations, the compromise set is formed, and one profile is selected
/// by the scenario's tie-break rule. The chain of selected controls is the
/// unique trajectory; per-step diagnostics record what each node saw.
inline Trajectory solve_game(const Scenario& scenario,
                             const GameOptions& options = {}) {
  validate(scenario);

  std::vector<Money> capital(scenario.agents.size());
  for (std::size_t i = 0; i < capital.size(); ++i) {
    capital[i] = scenario.agents[i].initial_capital;
  }

  auto root = detail::game_solve_node(scenario, 1, scenario.state_at_start(),
                                      capital,
                                      std::max(1, options.threads));
  if (!root) {
    throw InfeasibleError("no admissible joint control at the first step");
  }

  Trajectory trajectory = replay(scenario, root->chain);
  assert(trajectory.terminal_wealth == root->payoffs);
  for (std::size_t k = 0; k < root->diags.size(); ++k) {
    trajectory.steps[k].diagnostics = std::move(root->diags[k]);
  }
  return trajectory;
}

struct GuaranteedIncome {
  std::vector<Money> realized;   // terminal wealth on the compromise trajectory
  std::vector<Money> statistic;  // capital at the last step plus the min-max
                                 // settlement over last-step profiles
};

/// Two readings of the last-step guarantee for a trajectory produced by
/// solve_game: the realized terminal wealths, and the literal statistic that
/// adds the minimum over feasible last-step profiles of the largest
/// per-agent settlement sum.
inline GuaranteedIncome guaranteed_income(const Scenario& scenario,
                                          const Trajectory& trajectory) {
  validate(scenario);
  const std::size_t n = scenario.agents.size();
  const int f = scenario.horizon;

  GuaranteedIncome out;
  out.realized = trajectory.terminal_wealth;

  // Reconstruct the last decision node from the trajectory: prices, and each
  // agent's capital before the final entry.
  const TrajectoryStep& last_decision =
      trajectory.steps[static_cast<std::size_t>(f - 2)];
  std::vector<Money> capital(n);
  for (std::size_t i = 0; i < n; ++i) {
    capital[i] = last_decision.wealth[i] +
                 entry_cost(last_decision.joint.controls[i],
                            scenario.contracts);
  }

  std::vector<std::vector<Control>> admissible(n);
  for (std::size_t i = 0; i < n; ++i) {
    admissible[i] = admissible_controls(
        AgentState{capital[i], zero_control(scenario.contracts.size())}, 0,
        scenario.contracts, f - 1 == 1, scenario.require_trade_at_start);
  }

  Money min_max_settlement = std::numeric_limits<Money>::max();
  for (const JointControl& joint : detail::joint_candidates(admissible)) {
    MarketState final_state =
        step_prices(last_decision.state, joint, scenario.transition);
    Money worst = std::numeric_limits<Money>::min();
    bool feasible = true;
    for (std::size_t i = 0; i < n; ++i) {
      Money settlement = settlement_revenue(
          joint.controls[i], last_decision.state, final_state,
          scenario.contracts);
      Money wealth = capital[i] -
                     entry_cost(joint.controls[i], scenario.contracts) +
                     settlement;
      if (scenario.enforce_terminal_nonneg && wealth < 0) {
        feasible = false;
        break;
      }
      worst = std::max(worst, settlement);
    }
    if (feasible) min_max_settlement = std::min(min_max_settlement, worst);
  }
  assert(min_max_settlement != std::numeric_limits<Money>::max());

  out.statistic.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.statistic[i] = last_decision.wealth[i] + min_max_settlement;
  }
  return out;
}

}  // namespace futgame
