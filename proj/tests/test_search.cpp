#include <functional>

#include "doctest.h"
#include "hdpcg/search.hpp"
#include "test_util.hpp"

using namespace hdpcg;

namespace {

std::function<Cost(const LState&)> manhattan_h(V3 goal) {
  return [goal](const LState& s) {
    return static_cast<Cost>(l1(s.p, goal)) * kCostScale;
  };
}

std::function<bool(const LState&)> spatial_goal(V3 goal) {
  return [goal](const LState& s) { return s.p == goal; };
}

}  // namespace

TEST_CASE("astar: unobstructed cost equals Manhattan distance") {
  Rng rng(5);
  auto raw = testutil::random_layer_deg(rng, 5, 0.0, 0, kCostScale);
  auto res = astar(raw, {LState{{0, 0, 0}, 0}}, spatial_goal({4, 4, 4}),
                   manhattan_h({4, 4, 4}));
  REQUIRE(res.feasible);
  CHECK(res.cost == 12 * kCostScale);
  CHECK(res.path.size() == 13);
}

TEST_CASE("astar: start equals goal") {
  Rng rng(5);
  auto g = testutil::random_layer_deg(rng, 5, 0.0, 0, kCostScale);
  auto res = astar(g, {LState{{2, 2, 2}, 0}}, spatial_goal({2, 2, 2}),
                   manhattan_h({2, 2, 2}));
  REQUIRE(res.feasible);
  CHECK(res.cost == 0);
  CHECK(res.path.size() == 1);
}

TEST_CASE("astar: empty start set is a domain error") {
  Rng rng(5);
  auto g = testutil::random_layer_deg(rng, 5, 0.0, 0, kCostScale);
  CHECK_THROWS_AS(
      astar(g, {}, spatial_goal({2, 2, 2}), manhattan_h({2, 2, 2})),
      DomainError);
}

TEST_CASE("astar equals Dijkstra oracle on random two-layer instances") {
  Rng rng(11);
  int agree = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto g = testutil::random_layer_deg(rng, 10, 0.25, 8, kCostScale);
    V3 goal{9, 9, 9};
    auto a = astar(g, {LState{{0, 0, 0}, 0}}, spatial_goal(goal), manhattan_h(goal));
    auto d = dijkstra_oracle<LayerDeg>(g, {LState{{0, 0, 0}, 0}}, spatial_goal(goal));
    CHECK(a.feasible == d.feasible);
    if (a.feasible) {
      CHECK(a.cost == d.cost);
      CHECK(replay_path_cost(g, a.path) == a.cost);
      // heuristic admissibility along the returned optimal path
      Cost remaining = a.cost;
      for (std::size_t i = 0; i < a.path.size(); ++i) {
        CHECK(manhattan_h(goal)(a.path[i]) <= remaining);
        if (i + 1 < a.path.size())
          remaining -= replay_path_cost(g, {a.path[i], a.path[i + 1]});
      }
      ++agree;
    }
  }
  CHECK(agree >= 5);  // enough feasible instances to be meaningful
}

TEST_CASE("dijkstra oracle: single node, start=goal has cost 0") {
  Rng rng(5);
  auto g = testutil::random_layer_deg(rng, 3, 0.0, 0, kCostScale);
  auto d = dijkstra_oracle<LayerDeg>(g, {LState{{0, 0, 0}, 0}},
                                     spatial_goal({0, 0, 0}));
  REQUIRE(d.feasible);
  CHECK(d.cost == 0);
}

TEST_CASE("bfs_layered: empty 5x5 grid takes 8 ticks") {
  Rng rng(2);
  auto raw = testutil::random_raw_scenario(rng, 5, 5, 20, 0, 0.0);
  auto g = testutil::make_teg(raw);
  auto goal = [](const TState& s) { return s.x == 4 && s.y == 4; };
  auto res = bfs_layered(g, {TState{0, 0, 0}}, goal, 20);
  REQUIRE(res.feasible);
  CHECK(res.cost == 8 * kCostScale);
}

TEST_CASE("bfs_layered: permanently walled goal is infeasible") {
  Rng rng(2);
  auto raw = testutil::random_raw_scenario(rng, 5, 5, 20, 0, 0.0);
  raw.solid[4 * 5 + 4] = 1;
  auto g = testutil::make_teg(raw);
  auto res = bfs_layered(g, {TState{0, 0, 0}},
                         [](const TState& s) { return s.x == 4 && s.y == 4; }, 20);
  CHECK(!res.feasible);
}

TEST_CASE("dp_forward: forbidden start cell at t=0 is infeasible, not an error") {
  Rng rng(2);
  auto raw = testutil::random_raw_scenario(rng, 5, 5, 20, 0, 0.0);
  raw.solid[0] = 1;
  auto g = testutil::make_teg(raw);
  auto res = dp_forward(g, {TState{0, 0, 0}},
                        [](const TState& s) { return s.x == 4 && s.y == 4; }, 20);
  CHECK(!res.feasible);
}

TEST_CASE("dp_forward with unit costs equals bfs_layered on random scenarios") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    auto raw = testutil::random_raw_scenario(rng, 12, 6, 40, 3, 0.15);
    auto g = testutil::make_teg(raw);
    auto goal = [](const TState& s) { return s.x == 11 && s.y == 5; };
    auto dp = dp_forward(g, {TState{0, 0, 0}}, goal, 40);
    auto bf = bfs_layered(g, {TState{0, 0, 0}}, goal, 40);
    CHECK(dp.feasible == bf.feasible);
    if (dp.feasible) CHECK(dp.cost == bf.cost);
  }
}

TEST_CASE("dp_forward equals Dijkstra oracle on random TEGs") {
  Rng rng(31);
  int feasible = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto raw = testutil::random_raw_scenario(rng, 10, 6, 30, 3, 0.2);
    auto g = testutil::make_teg(raw);
    if (!g.contains({0, 0, 0})) continue;  // forbidden start; covered above
    auto goal = [](const TState& s) { return s.x == 9 && s.y == 5; };
    auto dp = dp_forward(g, {TState{0, 0, 0}}, goal, 30);
    auto dj = dijkstra_oracle<Teg>(g, {TState{0, 0, 0}}, goal);
    // oracle over the truncated TEG explores the same states
    CHECK(dp.feasible == dj.feasible);
    if (dp.feasible) {
      CHECK(dp.cost == dj.cost);
      CHECK(replay_path_cost(g, dp.path) == dp.cost);
      ++feasible;
    }
  }
  CHECK(feasible >= 10);
}
