#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "futgame/errors.hpp"
#include "futgame/market.hpp"
#include "futgame/scenario.hpp"
#include "futgame/trajectory.hpp"
#include "futgame/types.hpp"
#include "futgame/wealth.hpp"

namespace futgame {

/// Identifies a reachable decision node: step, prices, the capital in hand
/// after settling the expiring position, and that just-settled position.
struct StateKey {
  int step = 1;
  std::vector<Money> prices;
  Money capital = 0;
  Control open_position;

  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

struct ValueEntry {
  Money value = 0;
  std::optional<Control> argmax;  // absent at the terminal step
};

/// Best achievable terminal wealth from every reachable feasible state, with
/// the control attaining it.
struct ValueFunction {
  std::map<StateKey, ValueEntry> entries;
};

struct DpSolution {
  Money optimal_value = 0;
  std::vector<Control> control_sequence;  // one per decision step
  Trajectory trajectory;
  ValueFunction value_function;
};

/// One functional-equation step: prior value plus the best increment over
/// the admissible controls. Empty deltas mean the node is infeasible.
inline Money value_recursion(Money prior_value, std::span<const Money> deltas) {
  if (deltas.empty()) {
    throw InfeasibleError("value_recursion: no admissible control");
  }
  Money best = deltas.front();
  for (Money d : deltas) best = std::max(best, d);
  return prior_value + best;
}

namespace detail {

struct DpContext {
  const Scenario& scenario;
  int agent;
  const std::vector<JointControl>& policy;  // one joint per decision step
  std::map<StateKey, std::optional<ValueEntry>> memo;
};

/// Substitute the focal control into the fixed joint for step k, advance
/// prices, and settle the position: returns the child prices and the focal
/// agent's capital at the child node.
inline std::pair<MarketState, Money> dp_advance(DpContext& ctx, int k,
                                                const MarketState& state,
                                                Money post_entry_wealth,
                                                const Control& control) {
  JointControl joint = ctx.policy[static_cast<std::size_t>(k - 1)];
  joint.controls[static_cast<std::size_t>(ctx.agent)] = control;
  MarketState next = step_prices(state, joint, ctx.scenario.transition);
  Money settled = post_entry_wealth +
                  settlement_revenue(control, state, next,
                                     ctx.scenario.contracts);
  return {next, settled};
}

inline std::optional<ValueEntry> dp_solve_node(DpContext& ctx, int k,
                                               const MarketState& state,
                                               Money capital,
                                               const Control& open_position) {
  StateKey key{k, state.prices, capital, open_position};
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

  std::optional<ValueEntry> result;
  if (k == ctx.scenario.horizon) {
    if (capital >= 0 || !ctx.scenario.enforce_terminal_nonneg) {
      result = ValueEntry{capital, std::nullopt};
    }
  } else if (capital >= 0) {
    AgentState agent{capital, open_position};
    std::vector<Control> admissible = admissible_controls(
        agent, 0, ctx.scenario.contracts, k == 1,
        ctx.scenario.require_trade_at_start);

    std::vector<Money> deltas;
    std::optional<Control> argmax;
    Money best = 0;
    for (const Control& control : admissible) {
      Money wealth = capital - entry_cost(control, ctx.scenario.contracts);
      auto [next, settled] = dp_advance(ctx, k, state, wealth, control);
      auto child = dp_solve_node(ctx, k + 1, next, settled, control);
      if (!child) continue;
      deltas.push_back(child->value - capital);
      // Admissible controls come in canonical order, so the first maximizer
      // is the canonically smallest.
      if (!argmax || child->value > best) {
        best = child->value;
        argmax = control;
      }
    }
    if (argmax) {
      result = ValueEntry{value_recursion(capital, deltas), argmax};
    }
  }
  ctx.memo.emplace(std::move(key), result);
  return result;
}

inline std::vector<JointControl> normalize_policy(
    const Scenario& scenario, std::vector<JointControl> policy) {
  const std::size_t decisions =
      static_cast<std::size_t>(scenario.horizon - 1);
  const std::size_t n = scenario.agents.size();
  const std::size_t s = scenario.contracts.size();
  if (policy.empty()) {
    policy.assign(decisions, zero_joint(n, s));
    return policy;
  }
  if (policy.size() != decisions) {
    throw std::invalid_argument("others_policy must cover every decision step");
  }
  for (const JointControl& joint : policy) {
    if (joint.controls.size() != n) {
      throw std::invalid_argument(
          "others_policy joint control must have one control per agent");
    }
    for (const Control& control : joint.controls) {
      if (control.positions.size() != s) {
        throw std::invalid_argument(
            "others_policy control must have one entry per contract");
      }
    }
  }
  return policy;
}

}  // namespace detail

/// Maximize one agent's terminal wealth while every other agent plays the
/// fixed policy (zero controls when omitted). Among maximizing control
/// sequences the canonically smallest is returned, so output is unique.
/// Throws InfeasibleError when no feasible sequence exists.
inline DpSolution solve_deterministic(const Scenario& scenario,
                                      int agent_index,
                                      std::vector<JointControl> others_policy =
                                          {}) {
  validate(scenario);
  if (agent_index < 0 || agent_index >= scenario.num_agents()) {
    throw std::invalid_argument("agent index out of range");
  }

  const std::vector<JointControl> policy =
      detail::normalize_policy(scenario, std::move(others_policy));
  detail::DpContext ctx{scenario, agent_index, policy, {}};

  MarketState state = scenario.state_at_start();
  const Money initial =
      scenario.agents[static_cast<std::size_t>(agent_index)].initial_capital;
  const Control no_position = zero_control(scenario.contracts.size());

  auto root = detail::dp_solve_node(ctx, 1, state, initial, no_position);
  if (!root) {
    throw InfeasibleError("no feasible control sequence for agent " +
                          std::to_string(agent_index));
  }

  DpSolution solution;
  solution.optimal_value = root->value;

  // Walk the stored argmax chain to recover the unique optimal sequence.
  std::vector<JointControl> joints;
  Money capital = initial;
  Control open_position = no_position;
  for (int k = 1; k <= scenario.horizon - 1; ++k) {
    StateKey key{k, state.prices, capital, open_position};
    const auto& entry = ctx.memo.at(key);
    const Control& chosen = *entry->argmax;
    solution.control_sequence.push_back(chosen);

    Money wealth = capital - entry_cost(chosen, scenario.contracts);
    auto [next, settled] = detail::dp_advance(ctx, k, state, wealth, chosen);

    JointControl joint = ctx.policy[static_cast<std::size_t>(k - 1)];
    joint.controls[static_cast<std::size_t>(agent_index)] = chosen;
    joints.push_back(std::move(joint));

    state = next;
    capital = settled;
    open_position = chosen;
  }

  solution.trajectory = replay(scenario, joints);
  for (auto& [key, entry] : ctx.memo) {
    if (entry) solution.value_function.entries.emplace(key, *entry);
  }
  return solution;
}

}  // namespace futgame
