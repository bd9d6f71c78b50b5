#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace futgame {

/// All money values (prices, margins, commissions, wealth) are integer minor
/// units. Arithmetic is exact; there is no floating point in the data plane.
using Money = std::int64_t;

/// Per-contract constants. One futures contract on good j covers `quantity`
/// goods units, costs `margin + commission` to enter, and lives exactly one
/// step. `max_position` bounds |position| per agent per step when controls
/// are enumerated.
struct ContractSpec {
  int id = 0;
  std::int64_t quantity = 1;
  Money margin = 0;
  Money commission = 0;
  int max_position = 1;

  friend bool operator==(const ContractSpec&, const ContractSpec&) = default;
};

/// Market state at step `step` (1-based): one futures price per contract,
/// plus optional cash prices carried for reporting and the basis formula.
struct MarketState {
  int step = 1;
  std::vector<Money> prices;
  std::optional<std::vector<Money>> cash_prices;

  friend bool operator==(const MarketState&, const MarketState&) = default;
};

/// One agent's signed position vector for one step: positions[j] > 0 holds
/// that many long contracts on good j, < 0 short, 0 none. Comparison is
/// lexicographic over entries; this is the canonical control order.
struct Control {
  std::vector<int> positions;

  bool is_zero() const noexcept {
    return std::all_of(positions.begin(), positions.end(),
                       [](int c) { return c == 0; });
  }

  friend auto operator<=>(const Control&, const Control&) = default;
};

inline Control zero_control(std::size_t num_contracts) {
  return Control{std::vector<int>(num_contracts, 0)};
}

/// The controls of all agents at one step, agent-indexed. Canonical order is
/// lexicographic over agents' controls.
struct JointControl {
  std::vector<Control> controls;

  friend auto operator<=>(const JointControl&, const JointControl&) = default;
};

inline JointControl zero_joint(std::size_t num_agents,
                               std::size_t num_contracts) {
  return JointControl{
      std::vector<Control>(num_agents, zero_control(num_contracts))};
}

/// An agent between steps: cash in hand plus the position concluded at the
/// previous step (zero vector if none).
struct AgentState {
  Money free_capital = 0;
  Control open_position;
};

inline std::string to_string(const Control& control) {
  std::string out = "(";
  for (std::size_t j = 0; j < control.positions.size(); ++j) {
    if (j > 0) out += ",";
    int c = control.positions[j];
    if (c > 0) out += "+";
    out += std::to_string(c);
  }
  out += ")";
  return out;
}

inline std::string to_string(const JointControl& joint) {
  std::string out = "[";
  for (std::size_t i = 0; i < joint.controls.size(); ++i) {
    if (i > 0) out += " ";
    out += to_string(joint.controls[i]);
  }
  out += "]";
  return out;
}

}  // namespace futgame
