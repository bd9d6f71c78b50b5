#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "futgame/scenario.hpp"
#include "futgame/trajectory.hpp"
#include "futgame/types.hpp"
#include "futgame/wealth.hpp"
#include "support/generators.hpp"

using namespace futgame;

namespace {

// A{m=5,p=1}, B{m=8,p=2} from the worked examples.
const std::vector<ContractSpec> kTwo = {ContractSpec{0, 10, 5, 1, 2},
                                        ContractSpec{1, 4, 8, 2, 2}};
const std::vector<ContractSpec> kOne = {ContractSpec{0, 10, 5, 1, 2}};

}  // namespace

TEST_CASE("entry cost sums margin plus commission per lot") {
  CHECK(entry_cost(Control{{2, -1}}, kTwo) == 22);
  CHECK(entry_cost(Control{{0, 0}}, kTwo) == 0);
  CHECK(entry_cost(Control{{1}}, kOne) == 6);
}

TEST_CASE("settlement returns margin plus signed price change") {
  MarketState before{1, {100, 50}, {}};
  MarketState after{2, {103, 47}, {}};
  CHECK(settlement_revenue(Control{{2, 0}}, before, after, kTwo) == 70);
  CHECK(settlement_revenue(Control{{0, -1}}, before, after, kTwo) == 20);
  CHECK(settlement_revenue(Control{{0, 0}}, before, after, kTwo) == 0);

  SECTION("non-consecutive steps are rejected") {
    MarketState later{3, {103, 47}, {}};
    CHECK_THROWS_AS(settlement_revenue(Control{{1, 0}}, before, later, kTwo),
                    std::invalid_argument);
  }
}

TEST_CASE("wealth recursion steps") {
  CHECK(step_wealth(14, 25, 6) == 33);
  CHECK(step_wealth(20, 0, 6) == 14);
  CHECK(step_wealth(14, -15, 0) == -1);  // infeasible branch, caller prunes

  CHECK(terminal_wealth(33, 15) == 48);
  CHECK(terminal_wealth(39, 0) == 39);
  CHECK(terminal_wealth(0, 0) == 0);

  CHECK(efficiency(48, 20) == 28);
  CHECK(efficiency(20, 20) == 0);
  CHECK(efficiency(14, 20) == -6);
}

TEST_CASE("admissible controls filter the grid by budget") {
  std::vector<ContractSpec> contract = {ContractSpec{0, 10, 5, 1, 2}};
  AgentState agent{6, zero_control(1)};

  SECTION("first step with a required trade") {
    auto result = admissible_controls(agent, 0, contract, true, true);
    REQUIRE(result.size() == 2);
    CHECK(result[0] == Control{{-1}});
    CHECK(result[1] == Control{{1}});
  }
  SECTION("later step allows the zero control") {
    auto result = admissible_controls(agent, 0, contract, false, true);
    REQUIRE(result.size() == 3);
    CHECK(result[0] == Control{{-1}});
    CHECK(result[1] == Control{{0}});
    CHECK(result[2] == Control{{1}});
  }
  SECTION("no capital leaves only the zero control") {
    AgentState broke{0, zero_control(1)};
    auto result = admissible_controls(broke, 0, contract, false, true);
    REQUIRE(result.size() == 1);
    CHECK(result[0].is_zero());
  }
}

TEST_CASE("admissible controls equal a naive grid filter") {
  std::mt19937_64 rng(61002);
  for (int round = 0; round < 300; ++round) {
    std::vector<ContractSpec> contracts;
    const int s = testgen::pick_int(rng, 1, 2);
    for (int j = 0; j < s; ++j) {
      contracts.push_back(ContractSpec{j, testgen::pick_int(rng, 1, 4),
                                       testgen::pick_money(rng, 0, 9),
                                       testgen::pick_money(rng, 0, 4),
                                       testgen::pick_int(rng, 1, 2)});
    }
    AgentState agent{testgen::pick_money(rng, 0, 40), zero_control(s)};
    Money pending = testgen::pick_money(rng, -20, 20);
    bool first = testgen::pick_int(rng, 0, 1) == 1;
    bool require = testgen::pick_int(rng, 0, 1) == 1;

    auto fast = admissible_controls(agent, pending, contracts, first, require);

    // Independent filter straight from the definition.
    std::vector<Control> slow;
    for (const Control& c : control_grid(contracts)) {
      if (first && require && c.is_zero()) continue;
      if (agent.free_capital + pending - entry_cost(c, contracts) >= 0) {
        slow.push_back(c);
      }
    }
    REQUIRE(fast == slow);

    // Closed under sign flip: flipping every position keeps the cost, so
    // membership must be symmetric.
    for (const Control& c : fast) {
      Control flipped = c;
      for (int& p : flipped.positions) p = -p;
      CHECK(std::find(fast.begin(), fast.end(), flipped) != fast.end());
    }
  }
}

TEST_CASE("entry cost and settlement are additive over contracts") {
  std::mt19937_64 rng(61003);
  for (int round = 0; round < 100; ++round) {
    std::vector<ContractSpec> contracts;
    std::vector<int> positions;
    const int s = testgen::pick_int(rng, 2, 4);
    std::vector<Money> before_p, after_p;
    for (int j = 0; j < s; ++j) {
      contracts.push_back(ContractSpec{j, testgen::pick_int(rng, 1, 5),
                                       testgen::pick_money(rng, 0, 9),
                                       testgen::pick_money(rng, 0, 4), 3});
      positions.push_back(testgen::pick_int(rng, -3, 3));
      before_p.push_back(testgen::pick_money(rng, 1, 100));
      after_p.push_back(testgen::pick_money(rng, 1, 100));
    }
    MarketState before{1, before_p, {}};
    MarketState after{2, after_p, {}};
    Control whole{positions};

    Money cost_sum = 0;
    Money settle_sum = 0;
    for (int j = 0; j < s; ++j) {
      std::vector<int> solo(s, 0);
      solo[j] = positions[j];
      cost_sum += entry_cost(Control{solo}, contracts);
      settle_sum += settlement_revenue(Control{solo}, before, after, contracts);
    }
    CHECK(entry_cost(whole, contracts) == cost_sum);
    CHECK(settlement_revenue(whole, before, after, contracts) == settle_sum);
  }
}

TEST_CASE("opposite positions transfer price changes zero-sum") {
  std::mt19937_64 rng(61004);
  for (int round = 0; round < 100; ++round) {
    const int s = testgen::pick_int(rng, 1, 3);
    std::vector<ContractSpec> contracts;
    std::vector<int> positions;
    std::vector<Money> before_p, after_p;
    for (int j = 0; j < s; ++j) {
      contracts.push_back(ContractSpec{j, testgen::pick_int(rng, 1, 5),
                                       testgen::pick_money(rng, 0, 9), 0, 3});
      positions.push_back(testgen::pick_int(rng, -3, 3));
      before_p.push_back(testgen::pick_money(rng, 1, 100));
      after_p.push_back(testgen::pick_money(rng, 1, 100));
    }
    MarketState before{1, before_p, {}};
    MarketState after{2, after_p, {}};
    Control mine{positions};
    Control yours = mine;
    for (int& p : yours.positions) p = -p;

    // The settlements net to twice the margin return; the price-change
    // components cancel exactly.
    Money margin_return = 0;
    for (int j = 0; j < s; ++j) {
      margin_return += std::abs(static_cast<Money>(mine.positions[j])) *
                       contracts[j].margin;
    }
    CHECK(settlement_revenue(mine, before, after, contracts) +
              settlement_revenue(yours, before, after, contracts) ==
          2 * margin_return);
  }
}

TEST_CASE("conservation identity holds for arbitrary replayed sequences") {
  std::mt19937_64 rng(61005);
  testgen::ScenarioOptions opt;
  opt.max_agents = 3;
  opt.max_contracts = 2;
  opt.max_horizon = 4;
  opt.allow_linear_impact = true;
  for (int round = 0; round < 150; ++round) {
    Scenario scenario = testgen::random_scenario(rng, opt);
    auto joints = testgen::random_sequence(rng, scenario);
    Trajectory trajectory = replay(scenario, joints);
    CHECK(check_conservation(scenario, trajectory));
  }
}
