#pragma once

// Desk-scale fixtures used across the test suites. Expected values for these
// were frozen from exhaustive enumeration (see test_oracle.cpp).

#include "futgame/scenario.hpp"

namespace futgame::testfix {

// One agent, one contract {q=10, m=5, p=1, max_position=1}, capital 20,
// exogenous prices 100 -> 102 -> 101. Optimum: 48 via [+1, -1].
inline Scenario scenario_a() {
  Scenario scenario;
  scenario.horizon = 3;
  scenario.contracts = {ContractSpec{0, 10, 5, 1, 1}};
  scenario.agents = {AgentSpec{0, 20}};
  scenario.initial_prices = {100};
  scenario.transition = ExogenousPath{{{100}, {102}, {101}}};
  return scenario;
}

// Two agents, same contract, capital 20 each, exogenous 100 -> 102, one
// decision step. Unique feasible profile (long, long) with payoffs (39, 39).
inline Scenario scenario_b() {
  Scenario scenario;
  scenario.horizon = 2;
  scenario.contracts = {ContractSpec{0, 10, 5, 1, 1}};
  scenario.agents = {AgentSpec{0, 20}, AgentSpec{1, 20}};
  scenario.initial_prices = {100};
  scenario.transition = ExogenousPath{{{100}, {102}}};
  return scenario;
}

}  // namespace futgame::testfix
