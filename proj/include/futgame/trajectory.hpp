#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "futgame/market.hpp"
#include "futgame/scenario.hpp"
#include "futgame/types.hpp"
#include "futgame/wealth.hpp"

namespace futgame {

/// What the game solver saw at one decision node: the surviving candidate
/// joint controls with their continuation payoffs, the ideal point, regrets,
/// the compromise set, and which profile was selected.
struct StepDiagnostics {
  std::vector<JointControl> profiles;
  std::vector<std::vector<Money>> payoffs;
  std::vector<Money> ideal;
  std::vector<Money> regrets;
  std::vector<std::size_t> compromise_indices;
  std::size_t selected = 0;

  friend bool operator==(const StepDiagnostics&,
                         const StepDiagnostics&) = default;
};

struct TrajectoryStep {
  int step = 1;
  MarketState state;
  JointControl joint;  // zero controls at the terminal step
  std::vector<Money> wealth;
  std::optional<StepDiagnostics> diagnostics;

  friend bool operator==(const TrajectoryStep&,
                         const TrajectoryStep&) = default;
};

/// One realized path of the process: market state, joint control, and every
/// agent's wealth at each step, plus the terminal summary.
struct Trajectory {
  std::vector<TrajectoryStep> steps;  // steps 1..horizon
  std::vector<Money> terminal_wealth;
  std::vector<Money> efficiency;  // terminal wealth minus initial capital

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Mechanical wealth accounting for a fixed sequence of joint controls, one
/// per decision step. No feasibility rules are applied here; wealth may go
/// negative and the caller decides what that means.
inline Trajectory replay(const Scenario& scenario,
                         const std::vector<JointControl>& joints) {
  const std::size_t n = scenario.agents.size();
  const int f = scenario.horizon;
  if (joints.size() != static_cast<std::size_t>(f - 1)) {
    throw std::invalid_argument("replay: expected " + std::to_string(f - 1) +
                                " joint controls, got " +
                                std::to_string(joints.size()));
  }
  for (const JointControl& joint : joints) {
    if (joint.controls.size() != n) {
      throw std::invalid_argument(
          "replay: joint control must have one control per agent");
    }
  }

  auto attach_cash = [&scenario](MarketState& state) {
    if (scenario.cash_prices) {
      state.cash_prices =
          (*scenario.cash_prices)[static_cast<std::size_t>(state.step - 1)];
    }
  };

  Trajectory trajectory;
  MarketState state = scenario.state_at_start();

  std::vector<Money> wealth(n);
  for (std::size_t i = 0; i < n; ++i) {
    wealth[i] = step_wealth(scenario.agents[i].initial_capital, 0,
                            entry_cost(joints[0].controls[i],
                                       scenario.contracts));
  }
  trajectory.steps.push_back(TrajectoryStep{1, state, joints[0], wealth, {}});

  for (int k = 2; k <= f; ++k) {
    MarketState next = step_prices(state, joints[k - 2], scenario.transition);
    attach_cash(next);
    const bool terminal = (k == f);
    for (std::size_t i = 0; i < n; ++i) {
      Money settlement = settlement_revenue(joints[k - 2].controls[i], state,
                                            next, scenario.contracts);
      if (terminal) {
        wealth[i] = terminal_wealth(wealth[i], settlement);
      } else {
        wealth[i] = step_wealth(
            wealth[i], settlement,
            entry_cost(joints[k - 1].controls[i], scenario.contracts));
      }
    }
    JointControl joint = terminal ? zero_joint(n, scenario.contracts.size())
                                  : joints[k - 1];
    trajectory.steps.push_back(TrajectoryStep{k, next, joint, wealth, {}});
    state = next;
  }

  trajectory.terminal_wealth = wealth;
  trajectory.efficiency.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    trajectory.efficiency[i] =
        efficiency(wealth[i], scenario.agents[i].initial_capital);
  }
  return trajectory;
}

/// True when two trajectories walk the same path: states, controls, and
/// wealths all agree. Diagnostics are ignored, so solver output can be
/// compared against oracle output.
inline bool paths_equal(const Trajectory& a, const Trajectory& b) {
  if (a.terminal_wealth != b.terminal_wealth) return false;
  if (a.efficiency != b.efficiency) return false;
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    const TrajectoryStep& lhs = a.steps[k];
    const TrajectoryStep& rhs = b.steps[k];
    if (lhs.step != rhs.step || lhs.state != rhs.state ||
        lhs.joint != rhs.joint || lhs.wealth != rhs.wealth) {
      return false;
    }
  }
  return true;
}

/// Exact accounting identity every trajectory must satisfy: terminal wealth
/// equals initial capital, minus all commissions paid, plus all signed
/// price-change gains. Margins cancel between entry and settlement.
inline bool check_conservation(const Scenario& scenario,
                               const Trajectory& trajectory) {
  const std::size_t n = scenario.agents.size();
  const int f = scenario.horizon;
  if (trajectory.steps.size() != static_cast<std::size_t>(f)) return false;
  if (trajectory.terminal_wealth.size() != n) return false;

  for (std::size_t i = 0; i < n; ++i) {
    Money expected = scenario.agents[i].initial_capital;
    for (int k = 1; k <= f - 1; ++k) {
      const Control& control = trajectory.steps[k - 1].joint.controls[i];
      for (std::size_t j = 0; j < scenario.contracts.size(); ++j) {
        expected -= std::abs(static_cast<Money>(control.positions[j])) *
                    scenario.contracts[j].commission;
      }
    }
    for (int k = 2; k <= f; ++k) {
      const Control& held = trajectory.steps[k - 2].joint.controls[i];
      const auto& prev = trajectory.steps[k - 2].state.prices;
      const auto& now = trajectory.steps[k - 1].state.prices;
      for (std::size_t j = 0; j < scenario.contracts.size(); ++j) {
        expected += static_cast<Money>(held.positions[j]) *
                    (now[j] - prev[j]) * scenario.contracts[j].quantity;
      }
    }
    if (expected != trajectory.terminal_wealth[i]) return false;
  }
  return true;
}

}  // namespace futgame
