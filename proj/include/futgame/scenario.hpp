#pragma once

#include <string>
#include <variant>
#include <vector>

#include "futgame/errors.hpp"
#include "futgame/market.hpp"
#include "futgame/types.hpp"

namespace futgame {

/// How the game solver breaks ties inside the compromise set.
/// MaxMinPayoff is the full three-stage rule: best guaranteed payoff for the
/// least satisfied agent, then largest payoff sum, then canonically smallest
/// profile. The alternates drop the leading stages so they can be compared.
enum class TieBreak { MaxMinPayoff, MaxTotalPayoff, Canonical };

struct AgentSpec {
  int id = 0;
  Money initial_capital = 0;

  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

/// A complete, declarative description of one game: who plays, what is
/// traded, how prices move, and which feasibility flags apply. Decisions are
/// taken at steps 1..horizon-1; the last step only settles.
struct Scenario {
  int horizon = 2;
  std::vector<ContractSpec> contracts;
  std::vector<AgentSpec> agents;
  std::vector<Money> initial_prices;
  TransitionOperator transition;
  std::optional<std::vector<std::vector<Money>>> cash_prices;  // horizon rows
  bool require_trade_at_start = true;
  bool enforce_terminal_nonneg = true;
  TieBreak tie_break = TieBreak::MaxMinPayoff;

  int num_agents() const { return static_cast<int>(agents.size()); }
  int num_contracts() const { return static_cast<int>(contracts.size()); }

  MarketState state_at_start() const {
    MarketState state;
    state.step = 1;
    state.prices = initial_prices;
    if (cash_prices && !cash_prices->empty()) {
      state.cash_prices = cash_prices->front();
    }
    return state;
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Check every invariant; throws ValidationError naming the first violated
/// field.
inline void validate(const Scenario& scenario) {
  auto fail = [](const std::string& message) {
    throw ValidationError(message);
  };

  if (scenario.horizon < 2) fail("horizon must be >= 2");
  if (scenario.contracts.empty()) fail("contracts must be nonempty");
  const std::size_t s = scenario.contracts.size();
  for (std::size_t j = 0; j < s; ++j) {
    const ContractSpec& c = scenario.contracts[j];
    const std::string field = "contracts[" + std::to_string(j) + "]";
    if (c.id != static_cast<int>(j)) fail(field + ".id must equal its index");
    if (c.quantity < 1) fail(field + ".quantity must be >= 1");
    if (c.margin < 0) fail(field + ".margin must be >= 0");
    if (c.commission < 0) fail(field + ".commission must be >= 0");
    if (c.max_position < 1) fail(field + ".max_position must be >= 1");
  }

  if (scenario.agents.empty()) fail("agents must be nonempty");
  for (std::size_t i = 0; i < scenario.agents.size(); ++i) {
    const AgentSpec& a = scenario.agents[i];
    const std::string field = "agents[" + std::to_string(i) + "]";
    if (a.id != static_cast<int>(i)) fail(field + ".id must equal its index");
    if (a.initial_capital < 0) fail(field + ".initial_capital must be >= 0");
  }

  if (scenario.initial_prices.size() != s) {
    fail("initial_prices must have one entry per contract");
  }
  for (std::size_t j = 0; j < s; ++j) {
    if (scenario.initial_prices[j] < 1) {
      fail("initial_prices[" + std::to_string(j) + "] must be >= 1");
    }
  }

  if (const auto* exo = std::get_if<ExogenousPath>(&scenario.transition)) {
    if (exo->path.size() != static_cast<std::size_t>(scenario.horizon)) {
      fail("operator.path must have horizon rows (got " +
           std::to_string(exo->path.size()) + ", horizon is " +
           std::to_string(scenario.horizon) + ")");
    }
    for (std::size_t k = 0; k < exo->path.size(); ++k) {
      const auto& row = exo->path[k];
      const std::string field = "operator.path[" + std::to_string(k) + "]";
      if (row.size() != s) fail(field + " must have one entry per contract");
      for (std::size_t j = 0; j < s; ++j) {
        if (row[j] < 1) {
          fail(field + "[" + std::to_string(j) + "] must be >= 1");
        }
      }
    }
    if (exo->path.front() != scenario.initial_prices) {
      fail("operator.path[0] must equal initial_prices");
    }
  } else {
    const auto& impact = std::get<LinearImpact>(scenario.transition);
    if (impact.alpha.size() != s) {
      fail("operator.alpha must have one entry per contract");
    }
    if (impact.drift.size() != s) {
      fail("operator.drift must have one entry per contract");
    }
    if (impact.floor.size() != s) {
      fail("operator.floor must have one entry per contract");
    }
    for (std::size_t j = 0; j < s; ++j) {
      // Nonnegative impact keeps prices monotone in net volume.
      if (impact.alpha[j] < 0) {
        fail("operator.alpha[" + std::to_string(j) + "] must be >= 0");
      }
      if (impact.floor[j] < 1) {
        fail("operator.floor[" + std::to_string(j) + "] must be >= 1");
      }
    }
  }

  if (scenario.cash_prices) {
    if (scenario.cash_prices->size() !=
        static_cast<std::size_t>(scenario.horizon)) {
      fail("cash_prices must have horizon rows");
    }
    for (std::size_t k = 0; k < scenario.cash_prices->size(); ++k) {
      if ((*scenario.cash_prices)[k].size() != s) {
        fail("cash_prices[" + std::to_string(k) +
             "] must have one entry per contract");
      }
    }
  }
}

}  // namespace futgame
