#pragma once

// Seeded random generators for property-style tests. Everything is driven by
// a caller-owned mt19937_64 so failures reproduce exactly.

#include <algorithm>
#include <random>
#include <vector>

#include "futgame/compromise.hpp"
#include "futgame/scenario.hpp"
#include "futgame/types.hpp"
#include "futgame/wealth.hpp"

namespace futgame::testgen {

inline int pick_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Money pick_money(std::mt19937_64& rng, Money lo, Money hi) {
  return std::uniform_int_distribution<Money>(lo, hi)(rng);
}

struct ScenarioOptions {
  int min_agents = 1;
  int max_agents = 1;
  int min_contracts = 1;
  int max_contracts = 2;
  int min_horizon = 2;
  int max_horizon = 4;
  int max_position = 1;
  bool allow_linear_impact = false;
  Money min_capital = 0;
  Money max_capital = 80;
  bool randomize_flags = true;
};

inline Scenario random_scenario(std::mt19937_64& rng,
                                const ScenarioOptions& opt = {}) {
  Scenario scenario;
  scenario.horizon = pick_int(rng, opt.min_horizon, opt.max_horizon);
  const int s = pick_int(rng, opt.min_contracts, opt.max_contracts);
  const int n = pick_int(rng, opt.min_agents, opt.max_agents);

  for (int j = 0; j < s; ++j) {
    ContractSpec contract;
    contract.id = j;
    contract.quantity = pick_int(rng, 1, 5);
    contract.margin = pick_money(rng, 0, 8);
    contract.commission = pick_money(rng, 0, 3);
    contract.max_position = opt.max_position;
    scenario.contracts.push_back(contract);
  }
  for (int i = 0; i < n; ++i) {
    scenario.agents.push_back(
        AgentSpec{i, pick_money(rng, opt.min_capital, opt.max_capital)});
  }
  for (int j = 0; j < s; ++j) {
    scenario.initial_prices.push_back(pick_money(rng, 20, 120));
  }

  if (opt.allow_linear_impact && pick_int(rng, 0, 1) == 1) {
    LinearImpact impact;
    for (int j = 0; j < s; ++j) {
      impact.alpha.push_back(pick_money(rng, 0, 10));
      impact.drift.push_back(pick_money(rng, -5, 5));
      impact.floor.push_back(1);
    }
    scenario.transition = std::move(impact);
  } else {
    ExogenousPath exo;
    exo.path.push_back(scenario.initial_prices);
    for (int k = 1; k < scenario.horizon; ++k) {
      std::vector<Money> row = exo.path.back();
      for (Money& price : row) {
        price = std::max<Money>(1, price + pick_money(rng, -6, 6));
      }
      exo.path.push_back(std::move(row));
    }
    scenario.transition = std::move(exo);
  }

  if (pick_int(rng, 0, 3) == 0) {
    std::vector<std::vector<Money>> cash;
    for (int k = 0; k < scenario.horizon; ++k) {
      std::vector<Money> row;
      for (int j = 0; j < s; ++j) row.push_back(pick_money(rng, 1, 130));
      cash.push_back(std::move(row));
    }
    scenario.cash_prices = std::move(cash);
  }

  if (opt.randomize_flags) {
    scenario.require_trade_at_start = pick_int(rng, 0, 1) == 1;
    scenario.enforce_terminal_nonneg = pick_int(rng, 0, 1) == 1;
  }
  return scenario;
}

/// Arbitrary joint-control sequence on the grid, no feasibility applied.
inline std::vector<JointControl> random_sequence(std::mt19937_64& rng,
                                                 const Scenario& scenario) {
  std::vector<Control> grid = control_grid(scenario.contracts);
  std::vector<JointControl> joints;
  for (int k = 1; k < scenario.horizon; ++k) {
    JointControl joint;
    for (int i = 0; i < scenario.num_agents(); ++i) {
      joint.controls.push_back(
          grid[static_cast<std::size_t>(pick_int(
              rng, 0, static_cast<int>(grid.size()) - 1))]);
    }
    joints.push_back(std::move(joint));
  }
  return joints;
}

inline PayoffTable random_table(std::mt19937_64& rng, int max_agents,
                                int max_profiles, Money lo, Money hi) {
  PayoffTable table;
  const int n = pick_int(rng, 1, max_agents);
  const int m = pick_int(rng, 1, max_profiles);
  for (int x = 0; x < m; ++x) {
    std::vector<Money> row;
    for (int i = 0; i < n; ++i) row.push_back(pick_money(rng, lo, hi));
    table.payoffs.push_back(std::move(row));
  }
  return table;
}

}  // namespace futgame::testgen
