#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "futgame/types.hpp"

namespace futgame {

/// Price transition given as an explicit table: row k (1-based) holds the
/// prices at step k, so the table has exactly `horizon` rows and ignores the
/// agents' controls.
struct ExogenousPath {
  std::vector<std::vector<Money>> path;

  friend bool operator==(const ExogenousPath&, const ExogenousPath&) = default;
};

/// Price transition that reacts linearly to net signed volume:
///   prices'[j] = max(floor[j], prices[j] + drift[j] + alpha[j] * V_j)
/// where V_j is the sum of all agents' positions on contract j.
struct LinearImpact {
  std::vector<Money> alpha;
  std::vector<Money> drift;
  std::vector<Money> floor;

  friend bool operator==(const LinearImpact&, const LinearImpact&) = default;
};

using TransitionOperator = std::variant<ExogenousPath, LinearImpact>;

/// Cash price minus futures price; positive at a premium, negative at a
/// discount, zero at convergence.
inline Money basis(Money cash_price, Money futures_price) {
  return cash_price - futures_price;
}

/// Advance the market one step. Pure: identical inputs give identical
/// outputs, and the input state is never modified.
inline MarketState step_prices(const MarketState& state,
                               const JointControl& joint,
                               const TransitionOperator& op) {
  const std::size_t s = state.prices.size();
  for (const Control& control : joint.controls) {
    if (control.positions.size() != s) {
      throw std::invalid_argument(
          "step_prices: control has " +
          std::to_string(control.positions.size()) + " entries, expected " +
          std::to_string(s));
    }
  }

  MarketState next;
  next.step = state.step + 1;

  if (const auto* exo = std::get_if<ExogenousPath>(&op)) {
    if (state.step < 1 ||
        static_cast<std::size_t>(state.step) >= exo->path.size()) {
      throw std::out_of_range("step_prices: horizon exhausted at step " +
                              std::to_string(state.step));
    }
    const auto& row = exo->path[static_cast<std::size_t>(state.step)];
    if (row.size() != s) {
      throw std::invalid_argument("step_prices: path row has " +
                                  std::to_string(row.size()) +
                                  " entries, expected " + std::to_string(s));
    }
    next.prices = row;
    return next;
  }

  const auto& impact = std::get<LinearImpact>(op);
  if (impact.alpha.size() != s || impact.drift.size() != s ||
      impact.floor.size() != s) {
    throw std::invalid_argument(
        "step_prices: impact coefficient vectors must have one entry per "
        "contract");
  }
  next.prices.resize(s);
  for (std::size_t j = 0; j < s; ++j) {
    Money net_volume = 0;  // V_j, signed sum over agents
    for (const Control& control : joint.controls) {
      net_volume += control.positions[j];
    }
    Money moved =
        state.prices[j] + impact.drift[j] + impact.alpha[j] * net_volume;
    next.prices[j] = std::max(impact.floor[j], moved);
  }
  return next;
}

}  // namespace futgame
