#include "doctest.h"
#include "hdpcg/timedir.hpp"

using namespace hdpcg;

namespace {

TimeConfig desk_time_cfg(std::uint64_t seed) {
  TimeConfig cfg;
  cfg.w = 15;
  cfg.h = 8;
  cfg.t_max = 60;
  cfg.n_platforms = 2;
  cfg.n_obstacles = 1;
  cfg.seed = seed;
  return cfg;
}

// 12x6 grid with a solid wall at x=4 bridged only by a horizontal platform at
// y=1 (span 5); the agent must ride to cross.
TimeScenario bridge_scenario(bool add_unreachable_platform) {
  TimeScenario scn;
  scn.w = 12;
  scn.h = 6;
  scn.t_max = 100;
  scn.solid.assign(static_cast<std::size_t>(scn.w) * scn.h, 0);
  for (int y = 0; y < scn.h; ++y)
    if (y != 1) scn.solid[scn.cell(4, y)] = 1;
  DynamicObject bridge;
  bridge.kind = DynamicObject::Kind::Platform;
  for (int x = 2; x <= 6; ++x) bridge.track.push_back({x, 1});
  bridge.period = 2 * bridge.span() - 2;
  bridge.phase = 0;  // at the left endpoint (2,1) at t=0
  scn.objects.push_back(bridge);
  // (4,1) is mid-track (not walkable), so the wall is complete on foot
  if (add_unreachable_platform) {
    DynamicObject isolated;
    isolated.kind = DynamicObject::Kind::Platform;
    for (int y = 1; y <= 4; ++y) isolated.track.push_back({9, y});
    isolated.period = 2 * isolated.span() - 2;
    isolated.phase = 0;
    scn.objects.push_back(isolated);
    for (int y = 0; y < scn.h; ++y)
      for (int x = 8; x <= 10; ++x)
        if (x != 9) scn.solid[scn.cell(x, y)] = 1;
    scn.solid[scn.cell(9, 0)] = 1;
    scn.solid[scn.cell(9, 5)] = 1;
    scn.goal = {7, 4};
  } else {
    scn.goal = {11, 4};
  }
  scn.start = {0, 1};
  return scn;
}

}  // namespace

TEST_CASE("dynamic object: reflecting index sequence for span 4") {
  DynamicObject o;
  o.track = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
  o.period = 6;
  o.phase = 0;
  int expect[] = {0, 1, 2, 3, 2, 1, 0};
  for (int t = 0; t <= 6; ++t) CHECK(o.index_at(t) == expect[t]);
  for (int t = 0; t < 30; ++t) {
    CHECK(o.position_at(t) == o.position_at(t + o.period));
  }
  DynamicObject shifted = o;
  shifted.phase = 2;
  for (int t = 0; t < 12; ++t) CHECK(shifted.index_at(t) == o.index_at(t + 2));
}

TEST_CASE("instantiate_catalog: S-scale defaults and determinism") {
  TimeConfig cfg;  // Small-scale defaults: 30x15, 4 platforms, 4 obstacles
  cfg.seed = 3;
  auto scn = instantiate_catalog(cfg);
  CHECK(scn.platform_ids().size() == 4);
  CHECK(scn.obstacle_ids().size() == 4);
  for (int i : scn.platform_ids()) CHECK(scn.objects[i].span() >= 4);
  for (int i : scn.obstacle_ids()) CHECK(scn.objects[i].span() >= 3);
  for (const auto& o : scn.objects) CHECK(o.period == 2 * o.span() - 2);

  auto scn2 = instantiate_catalog(cfg);
  CHECK(scn.to_json({}) == scn2.to_json({}));
}

TEST_CASE("instantiate_catalog: zero objects on an empty grid is purely static") {
  TimeConfig cfg = desk_time_cfg(5);
  cfg.n_platforms = cfg.n_obstacles = 0;
  cfg.p_solid = 0.0;
  auto scn = instantiate_catalog(cfg);
  CHECK(scn.objects.empty());
  auto teg = scn.make_teg(scn.t_max, false);
  auto res = bfs_layered(teg, {TState{scn.start.x, scn.start.y, 0}},
                         [&](const TState& s) {
                           return s.x == scn.goal.x && s.y == scn.goal.y;
                         },
                         scn.t_max);
  REQUIRE(res.feasible);
  CHECK(res.cost == static_cast<Cost>(l1(scn.start, scn.goal)) * kCostScale);
}

TEST_CASE("static backbone: empty grid confirms in L1-distance ticks") {
  TimeConfig cfg = desk_time_cfg(7);
  cfg.n_platforms = cfg.n_obstacles = 0;
  cfg.p_solid = 0.0;
  auto scn = instantiate_catalog(cfg);
  auto sol = static_backbone_validate(cfg, scn);
  REQUIRE(sol.feasible);
  CHECK(sol.ticks == l1(scn.start, scn.goal));
  CHECK(replay_policy(scn, sol.policy).ok);
}

TEST_CASE("static backbone: policies replay legally on random scenarios") {
  int feasible = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    TimeConfig cfg;  // full S-scale catalog
    cfg.seed = 1000 + seed;
    TimeScenario scn;
    try {
      scn = instantiate_catalog(cfg);
    } catch (const GenerationFailure&) {
      continue;
    }
    auto sol = static_backbone_validate(cfg, scn);
    if (!sol.feasible) continue;
    auto rep = replay_policy(scn, sol.policy);
    CHECK(rep.ok);
    if (!rep.ok)
      for (const auto& v : rep.violations) MESSAGE(v);
    CHECK(sol.policy.back().to == scn.goal);
    ++feasible;
  }
  CHECK(feasible >= 20);
}

TEST_CASE("simplified TEG-A*: bridge scenario is solved with the platform used") {
  auto scn = bridge_scenario(false);
  auto sol = teg_astar_simplified(scn);
  REQUIRE(sol.feasible);
  bool rode = false;
  for (const auto& pr : sol.policy)
    if (pr.action == TegAction::Ride) {
      rode = true;
      CHECK(pr.ticks >= 3);
    }
  CHECK(rode);
  CHECK(replay_policy(scn, sol.policy).ok);
  CHECK(sol.policy.back().to == scn.goal);
}

TEST_CASE("simplified TEG-A*: unreachable platform makes the goal mask unattainable") {
  auto scn = bridge_scenario(true);
  auto sol = teg_astar_simplified(scn);
  CHECK(!sol.feasible);
}

TEST_CASE("simplified TEG-A*: cost is bounded below by the oracle") {
  for (std::uint64_t seed : {2ULL, 4ULL, 6ULL, 8ULL}) {
    TimeConfig cfg = desk_time_cfg(seed);
    TimeScenario scn;
    try {
      scn = instantiate_catalog(cfg);
    } catch (const GenerationFailure&) {
      continue;
    }
    auto sol = teg_astar_simplified(scn);
    if (!sol.feasible) continue;
    CHECK(replay_policy(scn, sol.policy).ok);
    CHECK(sol.cost >= sol.ticks);  // trivial lower bound; exact check below
  }
}

TEST_CASE("cost field: hand-evaluated unit values") {
  TimeScenario scn;
  scn.w = 8;
  scn.h = 4;
  scn.t_max = 40;
  scn.solid.assign(32, 0);
  DynamicObject plat;
  plat.kind = DynamicObject::Kind::Platform;
  for (int x = 1; x <= 4; ++x) plat.track.push_back({x, 1});
  plat.period = 6;
  plat.phase = 0;
  scn.objects.push_back(plat);
  CostField field(scn, 0.5, 4, 2);  // P=6, omega=3: window is t%6 < 3

  // WALK, no danger, outside the window (s_t=0): exactly 1.00
  TegEdge walk{{6, 3, 3}, {7, 3, 4}, TegAction::Walk, -1, false, false};
  CHECK(field.edge_cost(walk) == cost_from(1.00));

  // RIDE inside the window, boarding tick: 0.25 + 0 + 0 - 0.10 = 0.15
  TegEdge ride{{1, 1, 0}, {2, 1, 1}, TegAction::Ride, 0, true, false};
  CHECK(field.edge_cost(ride) == cost_from(0.15));

  // WAIT next to an obstacle at t: 1.0 + 0.3|s_t| + 2.0
  DynamicObject obst;
  obst.kind = DynamicObject::Kind::Obstacle;
  obst.track = {{6, 0}, {6, 1}, {6, 2}};
  obst.period = 4;
  obst.phase = 0;
  scn.objects.push_back(obst);
  CostField f2(scn, 0.5, 4, 2);
  TegEdge wait0{{5, 0, 0}, {5, 0, 1}, TegAction::Wait, -1, false, false};
  CHECK(f2.edge_cost(wait0) == cost_from(1.0 + 0.3 + 2.0));  // t=0 in window
  TegEdge wait4{{5, 0, 4}, {5, 0, 5}, TegAction::Wait, -1, false, false};
  // t=4: obstacle back at (6,0); outside window so s_t=0
  CHECK(f2.edge_cost(wait4) == cost_from(1.0 + 2.0));
}

TEST_CASE("cost field: exhaustive enumeration never goes negative") {
  TimeConfig cfg = desk_time_cfg(13);
  auto scn = instantiate_catalog(cfg);
  CostField field(scn, scn.target_ride_ratio, scn.target_min_spacing, 2);
  auto teg = scn.make_teg(20, false);
  teg.set_cost_model(&field);
  for (int t = 0; t < 20; ++t)
    for (int y = 0; y < scn.h; ++y)
      for (int x = 0; x < scn.w; ++x) {
        TState s{x, y, t};
        if (!teg.contains(s) && !teg.midtrack(x, y)) continue;
        for (const auto& e : teg.out_edges(s)) CHECK(teg.edge_cost(e) >= 0);
      }
}

TEST_CASE("teg_dp: unit field degenerates to the BFS tick count") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TimeConfig cfg = desk_time_cfg(seed + 40);
    TimeScenario scn;
    try {
      scn = instantiate_catalog(cfg);
    } catch (const GenerationFailure&) {
      continue;
    }
    CostFieldParams unit;
    unit.c_ride = 1.0;
    unit.lambda_cad = unit.lambda_uni = unit.lambda_saf = unit.eta_ep = 0.0;
    CostField field(scn, scn.target_ride_ratio, scn.target_min_spacing, 2);
    CostField flat(scn, 0.0, scn.target_min_spacing, 2, unit);
    auto dp = teg_dp(scn, flat);
    auto teg = scn.make_teg(scn.t_max, false);
    auto bf = teg.contains({scn.start.x, scn.start.y, 0})
                  ? bfs_layered(teg, {TState{scn.start.x, scn.start.y, 0}},
                                [&](const TState& s) {
                                  return s.x == scn.goal.x && s.y == scn.goal.y;
                                },
                                scn.t_max)
                  : SearchResult<TState>{};
    CHECK(dp.feasible == bf.feasible);
    if (dp.feasible) CHECK(dp.cost == bf.cost);
  }
}

TEST_CASE("teg_dp: structured field equals the Dijkstra oracle") {
  int feasible = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TimeConfig cfg = desk_time_cfg(seed + 60);
    TimeScenario scn;
    try {
      scn = instantiate_catalog(cfg);
    } catch (const GenerationFailure&) {
      continue;
    }
    CostField field(scn, scn.target_ride_ratio, scn.target_min_spacing, 2);
    auto dp = teg_dp(scn, field);
    auto teg = scn.make_teg(scn.t_max, false);
    teg.set_cost_model(&field);
    if (!teg.contains({scn.start.x, scn.start.y, 0})) {
      CHECK(!dp.feasible);
      continue;
    }
    auto dj = dijkstra_oracle<Teg>(teg, {TState{scn.start.x, scn.start.y, 0}},
                                   [&](const TState& s) {
                                     return s.x == scn.goal.x && s.y == scn.goal.y;
                                   });
    CHECK(dp.feasible == dj.feasible);
    if (dp.feasible) {
      CHECK(dp.cost == dj.cost);
      auto rep = replay_policy(scn, dp.policy);
      CHECK(rep.ok);
      if (!rep.ok)
        for (const auto& v : rep.violations) MESSAGE(v);
      for (const auto& pr : dp.policy) CHECK(pr.t + pr.ticks <= scn.t_max);
      ++feasible;
    }
  }
  CHECK(feasible >= 10);
}

TEST_CASE("replay: injected fault is reported at the corrupted tick") {
  TimeConfig cfg = desk_time_cfg(70);
  cfg.n_platforms = cfg.n_obstacles = 0;
  cfg.p_solid = 0.0;
  auto scn = instantiate_catalog(cfg);
  auto sol = teg_dp(scn);
  REQUIRE(sol.feasible);
  REQUIRE(sol.policy.size() >= 2);
  auto bad = sol.policy;
  // corrupt one walk into a 2-cell teleport
  for (auto& pr : bad)
    if (pr.action == TegAction::Walk) {
      pr.to.x = pr.from.x + 2;
      pr.to.y = pr.from.y;
      break;
    }
  auto rep = replay_policy(scn, bad);
  CHECK(!rep.ok);
}

TEST_CASE("replay: empty policy with start=goal succeeds") {
  TimeScenario scn;
  scn.w = scn.h = 3;
  scn.t_max = 10;
  scn.solid.assign(9, 0);
  scn.start = scn.goal = {1, 1};
  CHECK(replay_policy(scn, {}).ok);
}
