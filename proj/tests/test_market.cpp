#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <stdexcept>

#include "futgame/market.hpp"
#include "futgame/types.hpp"
#include "support/generators.hpp"

using namespace futgame;

namespace {

JointControl joint_of(std::vector<std::vector<int>> positions) {
  JointControl joint;
  for (auto& p : positions) joint.controls.push_back(Control{std::move(p)});
  return joint;
}

}  // namespace

TEST_CASE("basis is cash minus futures") {
  CHECK(basis(102, 100) == 2);
  CHECK(basis(100, 100) == 0);
  CHECK(basis(95, 100) == -5);
}

TEST_CASE("exogenous operator looks up the next row") {
  TransitionOperator op =
      ExogenousPath{{{100, 50}, {102, 47}, {99, 46}}};
  MarketState state{1, {100, 50}, {}};

  MarketState next = step_prices(state, joint_of({{3, -2}}), op);
  CHECK(next.step == 2);
  CHECK(next.prices == std::vector<Money>{102, 47});

  SECTION("controls are ignored") {
    MarketState other = step_prices(state, joint_of({{-1, 0}, {1, 1}}), op);
    CHECK(other.prices == next.prices);
  }
  SECTION("input state is untouched and calls repeat exactly") {
    MarketState again = step_prices(state, joint_of({{3, -2}}), op);
    CHECK(state.step == 1);
    CHECK(state.prices == std::vector<Money>{100, 50});
    CHECK(again == next);
  }
}

TEST_CASE("exogenous operator rejects an exhausted horizon") {
  TransitionOperator op = ExogenousPath{{{100}, {102}}};
  MarketState state{2, {102}, {}};
  CHECK_THROWS_AS(step_prices(state, joint_of({{0}}), op), std::out_of_range);
}

TEST_CASE("step_prices rejects mismatched control dimensions") {
  TransitionOperator op = ExogenousPath{{{100}, {102}}};
  MarketState state{1, {100}, {}};
  CHECK_THROWS_AS(step_prices(state, joint_of({{1, 1}}), op),
                  std::invalid_argument);
}

TEST_CASE("linear impact moves prices by net volume") {
  TransitionOperator op = LinearImpact{{50}, {0}, {1}};

  MarketState state{1, {10000}, {}};
  // Net volume +2 - 1 = +1.
  MarketState next = step_prices(state, joint_of({{2}, {-1}}), op);
  CHECK(next.prices == std::vector<Money>{10050});
  CHECK(next.step == 2);

  SECTION("floor clamps a crash") {
    MarketState cheap{1, {30}, {}};
    MarketState clamped = step_prices(cheap, joint_of({{-1}}), op);
    CHECK(clamped.prices == std::vector<Money>{1});
  }
}

TEST_CASE("linear impact is monotone in net volume and respects the floor") {
  std::mt19937_64 rng(61001);
  for (int round = 0; round < 200; ++round) {
    Money alpha = testgen::pick_money(rng, 0, 40);
    Money drift = testgen::pick_money(rng, -50, 50);
    TransitionOperator op = LinearImpact{{alpha}, {drift}, {1}};
    MarketState state{1, {testgen::pick_money(rng, 1, 80)}, {}};

    int volume = testgen::pick_int(rng, -3, 2);
    MarketState lo = step_prices(state, joint_of({{volume}}), op);
    MarketState hi = step_prices(state, joint_of({{volume + 1}}), op);
    CHECK(lo.prices[0] <= hi.prices[0]);
    CHECK(lo.prices[0] >= 1);
    CHECK(hi.prices[0] >= 1);
  }
}
