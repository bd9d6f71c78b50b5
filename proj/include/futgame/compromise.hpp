#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "futgame/scenario.hpp"
#include "futgame/types.hpp"

namespace futgame {

inline constexpr std::size_t kNoSelection =
    std::numeric_limits<std::size_t>::max();

/// Candidate profiles with one payoff per agent each. `profiles` labels the
/// rows when the table comes from a game node; abstract tables may leave it
/// empty. Rows are in canonical profile order.
struct PayoffTable {
  std::vector<JointControl> profiles;
  std::vector<std::vector<Money>> payoffs;

  std::size_t size() const { return payoffs.size(); }
};

/// Outcome of the compromise computation on one table.
struct CompromiseResult {
  std::vector<Money> ideal_point;              // M_i
  std::vector<Money> regrets;                  // per profile
  std::vector<std::size_t> set_indices;        // the compromise set
  std::size_t selected = kNoSelection;
};

namespace detail {

inline void check_table(const PayoffTable& table) {
  if (table.payoffs.empty()) {
    throw std::invalid_argument("payoff table is empty");
  }
  const std::size_t n = table.payoffs.front().size();
  for (const auto& row : table.payoffs) {
    if (row.size() != n) {
      throw std::invalid_argument("payoff table rows have unequal lengths");
    }
  }
}

}  // namespace detail

/// Each agent's best payoff over all profiles.
inline std::vector<Money> ideal_point(const PayoffTable& table) {
  detail::check_table(table);
  std::vector<Money> ideal = table.payoffs.front();
  for (const auto& row : table.payoffs) {
    for (std::size_t i = 0; i < ideal.size(); ++i) {
      if (row[i] > ideal[i]) ideal[i] = row[i];
    }
  }
  return ideal;
}

/// Largest deviation of one profile's payoffs from the ideal point.
inline Money regret_of_profile(std::span<const Money> payoffs,
                               std::span<const Money> ideal) {
  if (payoffs.size() != ideal.size()) {
    throw std::invalid_argument(
        "regret_of_profile: payoff and ideal lengths differ");
  }
  Money worst = std::numeric_limits<Money>::min();
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    Money deviation = ideal[i] - payoffs[i];
    if (deviation > worst) worst = deviation;
  }
  return worst;
}

/// The profiles minimizing the maximum deviation from the ideal point.
/// Nonempty for any finite nonempty table; no selection is made here.
inline CompromiseResult compromise_set(const PayoffTable& table) {
  detail::check_table(table);
  CompromiseResult result;
  result.ideal_point = ideal_point(table);
  result.regrets.reserve(table.size());
  Money best = std::numeric_limits<Money>::max();
  for (const auto& row : table.payoffs) {
    Money regret = regret_of_profile(row, result.ideal_point);
    result.regrets.push_back(regret);
    if (regret < best) best = regret;
  }
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (result.regrets[x] == best) result.set_indices.push_back(x);
  }
  return result;
}

/// Pick one member of the compromise set. The full rule compares, in order:
/// the payoff of the least satisfied agent (largest min_i W_i), the payoff
/// sum, and finally the canonical profile key, so the choice is always
/// deterministic. Alternate rules start at a later stage.
inline std::size_t select_compromise(const CompromiseResult& result,
                                     const PayoffTable& table,
                                     TieBreak rule = TieBreak::MaxMinPayoff) {
  if (result.set_indices.empty()) {
    throw std::invalid_argument("select_compromise: compromise set is empty");
  }

  std::vector<std::size_t> pool = result.set_indices;

  auto keep_best = [&pool, &table](auto score) {
    Money best = std::numeric_limits<Money>::min();
    for (std::size_t x : pool) {
      Money value = score(table.payoffs[x]);
      if (value > best) best = value;
    }
    std::vector<std::size_t> kept;
    for (std::size_t x : pool) {
      if (score(table.payoffs[x]) == best) kept.push_back(x);
    }
    pool = std::move(kept);
  };

  if (rule == TieBreak::MaxMinPayoff) {
    keep_best([](const std::vector<Money>& row) {
      Money lowest = row.front();
      for (Money w : row) lowest = std::min(lowest, w);
      return lowest;
    });
  }
  if (rule == TieBreak::MaxMinPayoff || rule == TieBreak::MaxTotalPayoff) {
    keep_best([](const std::vector<Money>& row) {
      Money sum = 0;
      for (Money w : row) sum += w;
      return sum;
    });
  }
  // Rows are in canonical profile order, so the smallest index is the
  // canonically smallest profile.
  return pool.front();
}

}  // namespace futgame
