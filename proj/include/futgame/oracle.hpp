#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "futgame/dp.hpp"
#include "futgame/errors.hpp"
#include "futgame/market.hpp"
#include "futgame/scenario.hpp"
#include "futgame/trajectory.hpp"
#include "futgame/types.hpp"

// Exhaustive reference solvers for small instances. These share the domain
// types and the wealth formulas with the real solvers but none of their
// search machinery: no memoization, no value functions, no pruning beyond
// feasibility. Agreement between the two paths is the evidence the tests
// rely on.

namespace futgame::oracle {

enum class GameMode { PerStep, NormalForm };

inline constexpr std::uint64_t kDefaultCap = 1'000'000;

namespace detail {

// Local copy of the control grid: odometer over [-max_position,
// +max_position] per contract, canonical order.
inline std::vector<Control> grid(const std::vector<ContractSpec>& contracts) {
  std::vector<Control> out;
  std::vector<int> current(contracts.size());
  for (std::size_t j = 0; j < contracts.size(); ++j) {
    current[j] = -contracts[j].max_position;
  }
  for (;;) {
    out.push_back(Control{current});
    std::size_t j = contracts.size();
    for (;;) {
      if (j == 0) return out;
      --j;
      if (current[j] < contracts[j].max_position) {
        ++current[j];
        break;
      }
      current[j] = -contracts[j].max_position;
    }
  }
}

inline Money cost_of(const Control& control,
                     const std::vector<ContractSpec>& contracts) {
  Money total = 0;
  for (std::size_t j = 0; j < contracts.size(); ++j) {
    total += std::abs(static_cast<Money>(control.positions[j])) *
             (contracts[j].margin + contracts[j].commission);
  }
  return total;
}

inline Money settle(const Control& position, const std::vector<Money>& prev,
                    const std::vector<Money>& now,
                    const std::vector<ContractSpec>& contracts) {
  Money total = 0;
  for (std::size_t j = 0; j < contracts.size(); ++j) {
    Money c = position.positions[j];
    total += std::abs(c) * contracts[j].margin +
             c * (now[j] - prev[j]) * contracts[j].quantity;
  }
  return total;
}

inline void check_cap(std::uint64_t per_step, int decisions,
                      std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int k = 0; k < decisions; ++k) {
    if (per_step != 0 && total > cap / per_step) {
      throw CapExceededError("enumeration would exceed the cap of " +
                             std::to_string(cap) + " sequences");
    }
    total *= per_step;
  }
  if (total > cap) {
    throw CapExceededError("enumeration would exceed the cap of " +
                           std::to_string(cap) + " sequences");
  }
}

// Tie-break among minimum-regret rows, re-implemented from the rule's
// definition. Rows arrive in canonical order.
inline std::size_t pick_by_rule(const std::vector<std::vector<Money>>& rows,
                                const std::vector<std::size_t>& tied,
                                TieBreak rule) {
  std::vector<std::size_t> pool = tied;
  if (rule == TieBreak::MaxMinPayoff) {
    Money best = std::numeric_limits<Money>::min();
    for (std::size_t x : pool) {
      Money low = rows[x][0];
      for (Money w : rows[x]) low = std::min(low, w);
      best = std::max(best, low);
    }
    std::vector<std::size_t> next;
    for (std::size_t x : pool) {
      Money low = rows[x][0];
      for (Money w : rows[x]) low = std::min(low, w);
      if (low == best) next.push_back(x);
    }
    pool = next;
  }
  if (rule != TieBreak::Canonical) {
    Money best = std::numeric_limits<Money>::min();
    for (std::size_t x : pool) {
      Money sum = 0;
      for (Money w : rows[x]) sum += w;
      best = std::max(best, sum);
    }
    std::vector<std::size_t> next;
    for (std::size_t x : pool) {
      Money sum = 0;
      for (Money w : rows[x]) sum += w;
      if (sum == best) next.push_back(x);
    }
    pool = next;
  }
  return pool.front();
}

// Compromise selection over a payoff matrix, from scratch: ideal point,
// per-row max deviation, argmin set, then the tie-break rule.
inline std::size_t compromise_pick(const std::vector<std::vector<Money>>& rows,
                                   TieBreak rule) {
  const std::size_t n = rows.front().size();
  std::vector<Money> ideal(n, std::numeric_limits<Money>::min());
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < n; ++i) ideal[i] = std::max(ideal[i], row[i]);
  }
  std::vector<Money> regret(rows.size());
  Money least = std::numeric_limits<Money>::max();
  for (std::size_t x = 0; x < rows.size(); ++x) {
    Money worst = std::numeric_limits<Money>::min();
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, ideal[i] - rows[x][i]);
    }
    regret[x] = worst;
    least = std::min(least, worst);
  }
  std::vector<std::size_t> tied;
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (regret[x] == least) tied.push_back(x);
  }
  return pick_by_rule(rows, tied, rule);
}

// Advance every index of a sequence odometer; false when wrapped around.
inline bool next_sequence(std::vector<std::size_t>& index, std::size_t base) {
  std::size_t k = index.size();
  while (k > 0) {
    --k;
    if (++index[k] < base) return true;
    index[k] = 0;
  }
  return false;
}

struct GamePick {
  std::vector<Money> payoffs;
  std::vector<JointControl> chain;
};

// Naive per-step compromise recursion, mirroring the backward procedure
// without any of the solver's structure.
inline std::optional<GamePick> per_step_pick(
    const Scenario& scenario, int k, const std::vector<Money>& prices,
    const std::vector<Money>& capital,
    const std::vector<Control>& agent_grid,
    const std::vector<JointControl>& joint_grid) {
  const std::size_t n = scenario.agents.size();

  std::vector<JointControl> profiles;
  std::vector<std::vector<Money>> rows;
  std::vector<GamePick> continuations;

  for (const JointControl& joint : joint_grid) {
    bool ok = true;
    std::vector<Money> wealth(n);
    for (std::size_t i = 0; i < n && ok; ++i) {
      const Control& control = joint.controls[i];
      if (k == 1 && scenario.require_trade_at_start && control.is_zero()) {
        ok = false;
        break;
      }
      wealth[i] = capital[i] - cost_of(control, scenario.contracts);
      if (wealth[i] < 0) ok = false;
    }
    if (!ok) continue;

    MarketState here{k, prices, {}};
    MarketState next = step_prices(here, joint, scenario.transition);
    std::vector<Money> settled(n);
    for (std::size_t i = 0; i < n; ++i) {
      settled[i] = wealth[i] + settle(joint.controls[i], prices, next.prices,
                                      scenario.contracts);
    }

    if (k + 1 == scenario.horizon) {
      bool feasible = true;
      if (scenario.enforce_terminal_nonneg) {
        for (Money w : settled) {
          if (w < 0) feasible = false;
        }
      }
      if (!feasible) continue;
      profiles.push_back(joint);
      rows.push_back(settled);
      continuations.push_back(GamePick{settled, {}});
      continue;
    }

    auto deeper = per_step_pick(scenario, k + 1, next.prices, settled,
                                agent_grid, joint_grid);
    if (!deeper) continue;
    profiles.push_back(joint);
    rows.push_back(deeper->payoffs);
    continuations.push_back(std::move(*deeper));
  }

  if (rows.empty()) return std::nullopt;
  std::size_t pick = compromise_pick(rows, scenario.tie_break);

  GamePick out;
  out.payoffs = rows[pick];
  out.chain.push_back(profiles[pick]);
  for (JointControl& joint : continuations[pick].chain) {
    out.chain.push_back(std::move(joint));
  }
  return out;
}

}  // namespace detail

/// Exhaustively enumerate every control sequence of the focal agent by
/// forward simulation and return the exact maximizer under the canonical
/// tie-break. Other agents play `others_policy` (zero controls when empty).
inline DpSolution brute_force_dp(const Scenario& scenario, int agent_index,
                                 std::vector<JointControl> others_policy = {},
                                 std::uint64_t cap = kDefaultCap) {
  validate(scenario);
  if (agent_index < 0 || agent_index >= scenario.num_agents()) {
    throw std::invalid_argument("agent index out of range");
  }
  const int decisions = scenario.horizon - 1;
  const std::size_t n = scenario.agents.size();
  const std::size_t s = scenario.contracts.size();
  if (others_policy.empty()) {
    others_policy.assign(static_cast<std::size_t>(decisions),
                         zero_joint(n, s));
  }

  std::vector<Control> grid = detail::grid(scenario.contracts);
  detail::check_cap(grid.size(), decisions, cap);

  std::optional<Money> best;
  std::vector<std::size_t> best_index;

  std::vector<std::size_t> index(static_cast<std::size_t>(decisions), 0);
  do {
    Money wealth =
        scenario.agents[static_cast<std::size_t>(agent_index)].initial_capital;
    std::vector<Money> prices = scenario.initial_prices;
    bool feasible = true;

    for (int k = 1; k <= decisions && feasible; ++k) {
      const Control& control = grid[index[static_cast<std::size_t>(k - 1)]];
      if (k == 1 && scenario.require_trade_at_start && control.is_zero()) {
        feasible = false;
        break;
      }
      wealth -= detail::cost_of(control, scenario.contracts);
      if (wealth < 0) {
        feasible = false;
        break;
      }
      JointControl joint = others_policy[static_cast<std::size_t>(k - 1)];
      joint.controls[static_cast<std::size_t>(agent_index)] = control;
      MarketState here{k, prices, {}};
      MarketState next = step_prices(here, joint, scenario.transition);
      wealth += detail::settle(control, prices, next.prices,
                               scenario.contracts);
      prices = next.prices;
      if (k < decisions && wealth < 0) feasible = false;
    }
    if (feasible && wealth < 0 && scenario.enforce_terminal_nonneg) {
      feasible = false;
    }
    // Strict improvement only: the first maximizer in odometer order is the
    // canonically smallest sequence.
    if (feasible && (!best || wealth > *best)) {
      best = wealth;
      best_index = index;
    }
  } while (detail::next_sequence(index, grid.size()));

  if (!best) {
    throw InfeasibleError("no feasible control sequence for agent " +
                          std::to_string(agent_index));
  }

  DpSolution solution;
  solution.optimal_value = *best;
  std::vector<JointControl> joints;
  for (int k = 1; k <= decisions; ++k) {
    const Control& control = grid[best_index[static_cast<std::size_t>(k - 1)]];
    solution.control_sequence.push_back(control);
    JointControl joint = others_policy[static_cast<std::size_t>(k - 1)];
    joint.controls[static_cast<std::size_t>(agent_index)] = control;
    joints.push_back(std::move(joint));
  }
  solution.trajectory = replay(scenario, joints);
  return solution;
}

/// Exhaustive reference for the game. PerStep re-implements the subgame-wise
/// compromise selection by naive recursion; NormalForm builds the payoff
/// table over whole joint-control sequences and applies the compromise rule
/// once.
inline Trajectory brute_force_game(const Scenario& scenario, GameMode mode,
                                   std::uint64_t cap = kDefaultCap) {
  validate(scenario);
  const int decisions = scenario.horizon - 1;
  const std::size_t n = scenario.agents.size();

  std::vector<Control> agent_grid = detail::grid(scenario.contracts);
  std::uint64_t joint_count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (joint_count > cap / agent_grid.size()) {
      throw CapExceededError("joint control grid exceeds the cap");
    }
    joint_count *= agent_grid.size();
  }
  detail::check_cap(joint_count, decisions, cap);

  // Materialize the joint grid in canonical order.
  std::vector<JointControl> joint_grid;
  std::vector<std::size_t> pick(n, 0);
  do {
    JointControl joint;
    for (std::size_t i = 0; i < n; ++i) {
      joint.controls.push_back(agent_grid[pick[i]]);
    }
    joint_grid.push_back(std::move(joint));
  } while (detail::next_sequence(pick, agent_grid.size()));

  if (mode == GameMode::PerStep) {
    std::vector<Money> capital(n);
    for (std::size_t i = 0; i < n; ++i) {
      capital[i] = scenario.agents[i].initial_capital;
    }
    auto picked = detail::per_step_pick(scenario, 1, scenario.initial_prices,
                                        capital, agent_grid, joint_grid);
    if (!picked) {
      throw InfeasibleError("no admissible joint control at the first step");
    }
    return replay(scenario, picked->chain);
  }

  // Normal form: one row per feasible whole sequence.
  std::vector<std::vector<JointControl>> sequences;
  std::vector<std::vector<Money>> rows;

  std::vector<std::size_t> index(static_cast<std::size_t>(decisions), 0);
  do {
    std::vector<JointControl> joints;
    joints.reserve(static_cast<std::size_t>(decisions));
    for (std::size_t k = 0; k < index.size(); ++k) {
      joints.push_back(joint_grid[index[k]]);
    }

    bool feasible = true;
    std::vector<Money> wealth(n);
    for (std::size_t i = 0; i < n; ++i) {
      wealth[i] = scenario.agents[i].initial_capital;
    }
    std::vector<Money> prices = scenario.initial_prices;
    for (int k = 1; k <= decisions && feasible; ++k) {
      const JointControl& joint = joints[static_cast<std::size_t>(k - 1)];
      for (std::size_t i = 0; i < n; ++i) {
        const Control& control = joint.controls[i];
        if (k == 1 && scenario.require_trade_at_start && control.is_zero()) {
          feasible = false;
          break;
        }
        wealth[i] -= detail::cost_of(control, scenario.contracts);
        if (wealth[i] < 0) {
          feasible = false;
          break;
        }
      }
      if (!feasible) break;
      MarketState here{k, prices, {}};
      MarketState next = step_prices(here, joint, scenario.transition);
      for (std::size_t i = 0; i < n; ++i) {
        wealth[i] += detail::settle(joint.controls[i], prices, next.prices,
                                    scenario.contracts);
        if (k < decisions && wealth[i] < 0) feasible = false;
        if (k == decisions && scenario.enforce_terminal_nonneg &&
            wealth[i] < 0) {
          feasible = false;
        }
      }
      prices = next.prices;
    }
    if (feasible) {
      sequences.push_back(std::move(joints));
      rows.push_back(wealth);
    }
  } while (detail::next_sequence(index, joint_grid.size()));

  if (rows.empty()) {
    throw InfeasibleError("no feasible joint control sequence");
  }
  std::size_t selected = detail::compromise_pick(rows, scenario.tie_break);
  return replay(scenario, sequences[selected]);
}

}  // namespace futgame::oracle
