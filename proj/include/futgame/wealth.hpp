#pragma once

#include <cassert>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "futgame/types.hpp"

namespace futgame {

namespace detail {

inline void check_dimensions(const Control& control,
                             std::span<const ContractSpec> contracts,
                             const char* who) {
  if (control.positions.size() != contracts.size()) {
    throw std::invalid_argument(std::string(who) + ": control has " +
                                std::to_string(control.positions.size()) +
                                " entries, expected " +
                                std::to_string(contracts.size()));
  }
}

}  // namespace detail

/// Cost of concluding `control` now: margin plus commission per contract,
/// scaled by position size. Zero control costs nothing.
inline Money entry_cost(const Control& control,
                        std::span<const ContractSpec> contracts) {
  detail::check_dimensions(control, contracts, "entry_cost");
  Money total = 0;
  for (std::size_t j = 0; j < contracts.size(); ++j) {
    Money lots = std::abs(static_cast<Money>(control.positions[j]));
    total += lots * (contracts[j].margin + contracts[j].commission);
  }
  return total;
}

/// Revenue when `position` (concluded at the previous step) expires now:
/// the margin comes back and each contract pays the signed price change
/// times the contract unit. Negative when losses exceed the returned margin.
inline Money settlement_revenue(const Control& position,
                                const MarketState& prices_prev,
                                const MarketState& prices_now,
                                std::span<const ContractSpec> contracts) {
  detail::check_dimensions(position, contracts, "settlement_revenue");
  if (prices_prev.prices.size() != contracts.size() ||
      prices_now.prices.size() != contracts.size()) {
    throw std::invalid_argument(
        "settlement_revenue: price vectors must have one entry per contract");
  }
  if (prices_now.step != prices_prev.step + 1) {
    throw std::invalid_argument(
        "settlement_revenue: states must be consecutive steps");
  }
  Money total = 0;
  for (std::size_t j = 0; j < contracts.size(); ++j) {
    Money c = position.positions[j];
    Money delta = prices_now.prices[j] - prices_prev.prices[j];
    total += std::abs(c) * contracts[j].margin +
             c * delta * contracts[j].quantity;
  }
  return total;
}

/// One step of the wealth recursion: settle expiring contracts, pay for new
/// ones. A negative result marks an infeasible branch; pruning is the
/// caller's decision.
inline Money step_wealth(Money prev_wealth, Money settlement,
                         Money new_entry_cost) {
  return prev_wealth + settlement - new_entry_cost;
}

/// Terminal wealth: at the last step contracts only settle, none are
/// concluded. This is the quantity each agent maximizes.
inline Money terminal_wealth(Money prev_wealth, Money settlement) {
  return prev_wealth + settlement;
}

/// Income over initial capital.
inline Money efficiency(Money wealth, Money initial_capital) {
  return wealth - initial_capital;
}

/// Every control on the grid positions[j] in {-max_position_j, ...,
/// +max_position_j}, in canonical (lexicographic) order.
inline std::vector<Control> control_grid(
    std::span<const ContractSpec> contracts) {
  const std::size_t s = contracts.size();
  std::vector<int> current(s);
  for (std::size_t j = 0; j < s; ++j) current[j] = -contracts[j].max_position;

  std::vector<Control> grid;
  for (;;) {
    grid.push_back(Control{current});
    std::size_t j = s;
    while (j > 0) {
      --j;
      if (current[j] < contracts[j].max_position) {
        ++current[j];
        break;
      }
      current[j] = -contracts[j].max_position;
      if (j == 0) return grid;
    }
    if (s == 0) return grid;  // single empty control
  }
}

/// Grid controls the agent can afford right now, in canonical order:
/// step_wealth(free_capital, settlement_pending, entry_cost) must stay
/// nonnegative, and at the first step the zero control is excluded when a
/// trade is required to open the game. Empty result means the node is
/// infeasible.
inline std::vector<Control> admissible_controls(
    const AgentState& agent, Money settlement_pending,
    std::span<const ContractSpec> contracts, bool is_first_step,
    bool require_trade_at_start) {
  assert(agent.free_capital >= 0);
  std::vector<Control> result;
  for (Control& control : control_grid(contracts)) {
    if (is_first_step && require_trade_at_start && control.is_zero()) continue;
    Money cost = entry_cost(control, contracts);
    if (step_wealth(agent.free_capital, settlement_pending, cost) >= 0) {
      result.push_back(std::move(control));
    }
  }
  return result;
}

}  // namespace futgame
