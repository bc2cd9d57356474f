#include "hdpcg/timedir.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "json.hpp"

namespace hdpcg {

const char* to_string(TimeMethod m) {
  switch (m) {
    case TimeMethod::StaticBackbone: return "Static";
    case TimeMethod::TegAstar: return "TEG-A*";
    case TimeMethod::TegDp: return "TEG-DP";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// DynamicObject

int DynamicObject::index_at(int t) const {
  int L = span();
  if (L == 1) return 0;
  int u = ((t + phase) % period + period) % period;
  return u < L ? u : period - u;
}

// ---------------------------------------------------------------------------
// TimeScenario

int TimeScenario::cycle() const {
  int T = 1;
  for (const auto& o : objects) T = std::lcm(T, o.period);
  return T;
}

std::vector<int> TimeScenario::platform_ids() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].kind == DynamicObject::Kind::Platform)
      out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> TimeScenario::obstacle_ids() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].kind == DynamicObject::Kind::Obstacle)
      out.push_back(static_cast<int>(i));
  return out;
}

Teg TimeScenario::make_teg(int horizon, bool cyclic) const {
  std::size_t cells = static_cast<std::size_t>(w) * h;
  std::vector<std::int16_t> obst(cells * (horizon + 1), -1);
  std::vector<std::uint8_t> midtrack(cells, 0);
  std::vector<std::vector<CarryEdge>> carry(horizon + 1);

  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& o = objects[i];
    if (o.kind == DynamicObject::Kind::Obstacle) {
      for (int t = 0; t <= horizon; ++t) {
        V2 p = o.position_at(t);
        std::size_t at = static_cast<std::size_t>(t) * cells + cell(p.x, p.y);
        if (obst[at] < 0) obst[at] = static_cast<std::int16_t>(i);
      }
    } else {
      for (int k = 1; k + 1 < o.span(); ++k)
        midtrack[cell(o.track[k].x, o.track[k].y)] = 1;
      int L = o.span();
      for (int t = 0; t < horizon; ++t) {
        int i0 = o.index_at(t), i1 = o.index_at(t + 1);
        CarryEdge e;
        e.from_cell = cell(o.track[i0].x, o.track[i0].y);
        e.to_cell = cell(o.track[i1].x, o.track[i1].y);
        e.platform = static_cast<int>(i);
        e.board = i0 == 0 || i0 == L - 1;
        e.alight = i1 == 0 || i1 == L - 1;
        carry[t].push_back(e);
      }
    }
  }
  for (auto& v : carry)
    std::sort(v.begin(), v.end(), [](const CarryEdge& a, const CarryEdge& b) {
      return a.from_cell != b.from_cell ? a.from_cell < b.from_cell
                                        : a.platform < b.platform;
    });
  return Teg(w, h, horizon, cyclic, solid, std::move(obst), std::move(midtrack),
             std::move(carry));
}

// ---------------------------------------------------------------------------
// catalog instantiation

namespace {

bool place_object(Rng& rng, const TimeScenario& scn,
                  const std::set<int>& used_cells, DynamicObject::Kind kind,
                  int span_lo, int span_hi, DynamicObject& out) {
  for (int tries = 0; tries < 200; ++tries) {
    int L = rand_int(rng, span_lo, span_hi);
    bool horiz = rand_int(rng, 0, 1) == 1;
    int x0 = rand_int(rng, 0, horiz ? scn.w - L : scn.w - 1);
    int y0 = rand_int(rng, 0, horiz ? scn.h - 1 : scn.h - L);
    std::vector<V2> track;
    bool ok = true;
    for (int k = 0; k < L; ++k) {
      V2 p{horiz ? x0 + k : x0, horiz ? y0 : y0 + k};
      int c = scn.cell(p.x, p.y);
      if (scn.solid[c] || used_cells.count(c)) {
        ok = false;
        break;
      }
      track.push_back(p);
    }
    if (!ok) continue;
    out.kind = kind;
    out.track = std::move(track);
    out.period = 2 * L - 2;
    out.phase = rand_int(rng, 0, out.period - 1);
    return true;
  }
  return false;
}

}  // namespace

TimeScenario instantiate_catalog(const TimeConfig& cfg) {
  for (int attempt = 0; attempt < cfg.attempt_cap; ++attempt) {
    Rng rng(cfg.seed * 9176451341ULL + attempt);
    TimeScenario scn;
    scn.w = cfg.w;
    scn.h = cfg.h;
    scn.t_max = cfg.t_max;
    scn.target_ride_ratio = cfg.target_ride_ratio;
    scn.target_min_spacing = cfg.target_min_spacing;
    scn.cadence_extra = cfg.cadence_extra;
    scn.seed = cfg.seed;
    std::size_t cells = static_cast<std::size_t>(cfg.w) * cfg.h;
    scn.solid.resize(cells);
    for (auto& c : scn.solid) c = rand_real(rng, 0, 1) < cfg.p_solid ? 1 : 0;

    std::set<int> used;
    bool ok = true;
    for (int i = 0; i < cfg.n_platforms + cfg.n_obstacles && ok; ++i) {
      bool platform = i < cfg.n_platforms;
      DynamicObject obj;
      ok = place_object(rng, scn, used,
                        platform ? DynamicObject::Kind::Platform
                                 : DynamicObject::Kind::Obstacle,
                        platform ? cfg.platform_span_min : cfg.obstacle_span_min,
                        platform ? cfg.platform_span_max : cfg.obstacle_span_max,
                        obj);
      if (!ok) break;
      for (const V2& p : obj.track) used.insert(scn.cell(p.x, p.y));
      scn.objects.push_back(std::move(obj));
    }
    if (!ok) continue;

    int floor = cfg.effective_endpoint_floor();
    bool endpoints = false;
    for (int tries = 0; tries < 1000 && !endpoints; ++tries) {
      V2 a{rand_int(rng, 0, cfg.w - 1), rand_int(rng, 0, cfg.h - 1)};
      V2 b{rand_int(rng, 0, cfg.w - 1), rand_int(rng, 0, cfg.h - 1)};
      if (l1(a, b) < floor) continue;
      if (scn.solid[scn.cell(a.x, a.y)] || scn.solid[scn.cell(b.x, b.y)]) continue;
      if (used.count(scn.cell(a.x, a.y)) || used.count(scn.cell(b.x, b.y))) continue;
      scn.start = a;
      scn.goal = b;
      endpoints = true;
    }
    if (!endpoints) continue;
    return scn;
  }
  throw GenerationFailure("catalog: cannot place requested objects");
}

// ---------------------------------------------------------------------------
// CostField (structured transition costs)

CostField::CostField(const TimeScenario& scn, double target_ride_ratio,
                     int d_min, int cadence_extra, CostFieldParams params)
    : scn_(&scn), params_(params) {
  period_ = d_min + cadence_extra;
  if (period_ <= 0) throw ConstructionError("cost field: nonpositive cadence period");
  window_ = static_cast<int>(std::lround(target_ride_ratio * period_));
}

bool CostField::danger(int x, int y, int t) const {
  static constexpr int dx[5] = {0, -1, 1, 0, 0};
  static constexpr int dy[5] = {0, 0, 0, -1, 1};
  for (const auto& o : scn_->objects) {
    if (o.kind != DynamicObject::Kind::Obstacle) continue;
    V2 p = o.position_at(t);
    for (int i = 0; i < 5; ++i)
      if (p.x == x + dx[i] && p.y == y + dy[i]) return true;
    V2 q = o.position_at(t + 1);
    if (q.x == x && q.y == y) return true;  // would enter the cell next tick
  }
  return false;
}

Cost CostField::edge_cost(const TegEdge& e) const {
  int t = e.from.t;
  bool ride = e.action == TegAction::Ride;
  double c = e.action == TegAction::Walk   ? params_.c_walk
             : e.action == TegAction::Wait ? params_.c_wait
                                           : params_.c_ride;
  if (ride && !in_window(t)) c += params_.lambda_cad;
  c += params_.lambda_uni * std::abs(phase_signal(t) - (ride ? 1 : 0));
  if (danger(e.to.x, e.to.y, t)) c += params_.lambda_saf;
  if (e.board) c -= params_.eta_ep;
  if (e.alight) c -= params_.eta_ep;
  Cost fixed = cost_from(c);
  return fixed < 0 ? 0 : fixed;
}

// ---------------------------------------------------------------------------
// policy construction and replay

Policy policy_from_path(const Teg& g, const std::vector<TState>& path) {
  Policy pol;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const TegEdge* best = nullptr;
    Cost best_c = kCostInf;
    auto edges = g.out_edges(path[i]);
    for (const auto& e : edges) {
      if (!(e.to == path[i + 1])) continue;
      Cost c = g.edge_cost(e);
      if (c < best_c) {
        best_c = c;
        best = &e;
      }
    }
    if (!best) throw DomainError("policy: non-edge hop in path");
    if (best->action == TegAction::Ride && !pol.empty() &&
        pol.back().action == TegAction::Ride &&
        pol.back().platform == best->platform &&
        pol.back().t + pol.back().ticks == path[i].t) {
      pol.back().to = {best->to.x, best->to.y};
      pol.back().ticks += 1;
      continue;
    }
    Primitive pr;
    pr.t = path[i].t;
    pr.action = best->action;
    pr.from = {path[i].x, path[i].y};
    pr.to = {path[i + 1].x, path[i + 1].y};
    pr.platform = best->platform;
    pol.push_back(pr);
  }
  return pol;
}

ReplayReport replay_policy(const TimeScenario& scn, const Policy& pol) {
  ReplayReport rep;
  auto fail = [&](int t, const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back("tick " + std::to_string(t) + ": " + msg);
  };
  auto occupied = [&](int x, int y, int t) {
    for (std::size_t i = 0; i < scn.objects.size(); ++i) {
      if (scn.objects[i].kind != DynamicObject::Kind::Obstacle) continue;
      V2 p = scn.objects[i].position_at(t);
      if (p.x == x && p.y == y) return static_cast<int>(i);
    }
    return -1;
  };
  std::vector<std::uint8_t> midtrack(static_cast<std::size_t>(scn.w) * scn.h, 0);
  for (const auto& o : scn.objects)
    if (o.kind == DynamicObject::Kind::Platform)
      for (int k = 1; k + 1 < o.span(); ++k)
        midtrack[scn.cell(o.track[k].x, o.track[k].y)] = 1;
  auto standable = [&](const V2& p, int t) {
    return p.x >= 0 && p.y >= 0 && p.x < scn.w && p.y < scn.h &&
           !scn.solid[scn.cell(p.x, p.y)] && !midtrack[scn.cell(p.x, p.y)] &&
           occupied(p.x, p.y, t) < 0;
  };

  V2 pos = scn.start;
  int t = 0;
  for (const auto& pr : pol) {
    if (pr.t != t) fail(pr.t, "non-contiguous tick sequence");
    t = pr.t;
    if (!(pr.from == pos)) fail(t, "primitive does not start at the agent cell");
    switch (pr.action) {
      case TegAction::Wait:
        if (!(pr.to == pr.from)) fail(t, "WAIT moves the agent");
        if (!standable(pr.to, t + 1)) fail(t, "WAIT cell blocked at t+1");
        t += 1;
        break;
      case TegAction::Walk: {
        if (l1(pr.from, pr.to) != 1) fail(t, "WALK is not 4-adjacent");
        if (!standable(pr.to, t + 1)) fail(t, "WALK lands on a blocked cell");
        int ob = occupied(pr.to.x, pr.to.y, t);
        if (ob >= 0) {
          V2 p = scn.objects[ob].position_at(t + 1);
          if (p == pr.from) fail(t, "head-on swap with an obstacle");
        }
        t += 1;
        break;
      }
      case TegAction::Ride: {
        if (pr.platform < 0 ||
            pr.platform >= static_cast<int>(scn.objects.size()) ||
            scn.objects[pr.platform].kind != DynamicObject::Kind::Platform) {
          fail(t, "RIDE references a non-platform object");
          t += pr.ticks;
          break;
        }
        const auto& p = scn.objects[pr.platform];
        int L = p.span();
        int i0 = p.index_at(t);
        if (!(p.track[i0] == pr.from) || (i0 != 0 && i0 != L - 1))
          fail(t, "boarding away from a platform endpoint");
        for (int k = 1; k <= pr.ticks; ++k) {
          V2 c = p.position_at(t + k);
          if (occupied(c.x, c.y, t + k) >= 0)
            fail(t + k, "ride frame collides with an obstacle");
        }
        int i1 = p.index_at(t + pr.ticks);
        if (!(p.track[i1] == pr.to) || (i1 != 0 && i1 != L - 1))
          fail(t + pr.ticks, "alighting away from a platform endpoint");
        t += pr.ticks;
        break;
      }
    }
    pos = pr.to;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Method 1: static backbone + timing validation

namespace {

// Static 2D grid view for the backbone A*.
struct StaticGrid {
  const TimeScenario* scn;
  std::vector<std::uint8_t> blocked;  // solid or platform mid-track

  using State = V2;
  std::uint64_t key(const V2& p) const {
    return static_cast<std::uint64_t>(p.y) * scn->w + p.x;
  }
  template <class F>
  void for_each_neighbor(const V2& p, F&& f) const {
    static constexpr int dx[4] = {-1, 1, 0, 0};
    static constexpr int dy[4] = {0, 0, -1, 1};
    for (int i = 0; i < 4; ++i) {
      V2 q{p.x + dx[i], p.y + dy[i]};
      if (q.x < 0 || q.y < 0 || q.x >= scn->w || q.y >= scn->h) continue;
      if (blocked[scn->cell(q.x, q.y)]) continue;
      f(q, kCostScale);
    }
  }
};

// TEG restricted to the backbone cells (timing search may only wait or walk
// along the planned spatial route).
struct BackboneTeg {
  const Teg* g;
  const std::set<int>* allowed;
  int w;

  using State = TState;
  std::uint64_t key(const TState& s) const { return g->key(s); }
  template <class F>
  void for_each_neighbor(const TState& s, F&& f) const {
    g->for_each_neighbor(s, [&](const TState& n, Cost c) {
      if (allowed->count(n.y * w + n.x)) f(n, c);
    });
  }
};

TimeSolution infeasible_solution(int resamples) {
  TimeSolution sol;
  sol.feasible = false;
  sol.resamples = resamples;
  return sol;
}

}  // namespace

TimeSolution static_backbone_validate(const TimeConfig& cfg, TimeScenario& scn) {
  for (int attempt = 0; attempt < cfg.attempt_cap; ++attempt) {
    if (attempt > 0) {
      TimeConfig salted = cfg;
      salted.seed = cfg.seed + 104729ULL * attempt;
      try {
        scn = instantiate_catalog(salted);
      } catch (const GenerationFailure&) {
        continue;
      }
    }
    StaticGrid grid{&scn, scn.solid};
    for (const auto& o : scn.objects)
      if (o.kind == DynamicObject::Kind::Platform)
        for (int k = 1; k + 1 < o.span(); ++k)
          grid.blocked[scn.cell(o.track[k].x, o.track[k].y)] = 1;
    V2 goal = scn.goal;
    auto backbone = astar<StaticGrid>(
        grid, {scn.start}, [goal](const V2& p) { return p == goal; },
        [goal](const V2& p) { return static_cast<Cost>(l1(p, goal)) * kCostScale; });
    if (!backbone.feasible) continue;

    std::set<int> allowed;
    for (const V2& p : backbone.path) allowed.insert(scn.cell(p.x, p.y));
    Teg teg = scn.make_teg(scn.t_max, false);
    if (!teg.contains({scn.start.x, scn.start.y, 0})) continue;
    BackboneTeg bt{&teg, &allowed, scn.w};
    auto timed = dijkstra_oracle<BackboneTeg>(
        bt, {TState{scn.start.x, scn.start.y, 0}},
        [goal](const TState& s) { return s.x == goal.x && s.y == goal.y; });
    if (!timed.feasible) continue;

    TimeSolution sol;
    sol.feasible = true;
    sol.policy = policy_from_path(teg, timed.path);
    sol.cost = timed.cost;
    sol.ticks = timed.path.back().t;
    sol.expanded = backbone.expanded + timed.expanded;
    sol.wall_time = backbone.wall_time + timed.wall_time;
    sol.resamples = attempt;
    return sol;
  }
  return infeasible_solution(cfg.attempt_cap);
}

// ---------------------------------------------------------------------------
// Method 2: simplified cyclic TEG-A* with interaction masks

namespace {

struct SimpState {
  int t = 0;  // mod T
  int x = 0, y = 0;
  std::uint32_t pm = 0;  // platforms used
  std::uint32_t ep = 0;  // obstacle endpoints visited
  friend bool operator==(const SimpState&, const SimpState&) = default;
};

struct SimpGraph {
  const TimeScenario* scn;
  int T = 1;
  int ep_bits = 0;
  std::vector<int> platform_bit;  // object index -> pm bit, -1 if none
  std::vector<std::pair<V2, int>> endpoint_bit;  // obstacle endpoint cell -> ep bit

  using State = SimpState;

  std::uint64_t key(const SimpState& s) const {
    std::uint64_t cells = static_cast<std::uint64_t>(scn->w) * scn->h;
    std::uint64_t mask = (static_cast<std::uint64_t>(s.pm) << ep_bits) | s.ep;
    return (mask * T + s.t) * cells + static_cast<std::uint64_t>(s.y) * scn->w + s.x;
  }

  std::uint32_t ep_at(const V2& p, std::uint32_t ep) const {
    for (const auto& [cell, bit] : endpoint_bit)
      if (cell == p) ep |= 1u << bit;
    return ep;
  }

  bool occupied(int x, int y, int t) const {
    for (const auto& o : scn->objects) {
      if (o.kind != DynamicObject::Kind::Obstacle) continue;
      V2 p = o.position_at(t);
      if (p.x == x && p.y == y) return true;
    }
    return false;
  }
  int obstacle_at(int x, int y, int t) const {
    for (std::size_t i = 0; i < scn->objects.size(); ++i) {
      if (scn->objects[i].kind != DynamicObject::Kind::Obstacle) continue;
      V2 p = scn->objects[i].position_at(t);
      if (p.x == x && p.y == y) return static_cast<int>(i);
    }
    return -1;
  }
  bool standable(int x, int y, int t, const std::vector<std::uint8_t>& midtrack) const {
    if (x < 0 || y < 0 || x >= scn->w || y >= scn->h) return false;
    int c = scn->cell(x, y);
    return !scn->solid[c] && !midtrack[c] && !occupied(x, y, t);
  }

  std::vector<std::uint8_t> midtrack;

  template <class F>
  void for_each_neighbor(const SimpState& s, F&& f) const {
    int t1 = (s.t + 1) % T;
    // wait
    if (standable(s.x, s.y, s.t + 1, midtrack))
      f(SimpState{t1, s.x, s.y, s.pm, ep_at({s.x, s.y}, s.ep)}, kCostScale);
    // walks
    static constexpr int dx[4] = {-1, 1, 0, 0};
    static constexpr int dy[4] = {0, 0, -1, 1};
    for (int i = 0; i < 4; ++i) {
      int nx = s.x + dx[i], ny = s.y + dy[i];
      if (!standable(nx, ny, s.t + 1, midtrack)) continue;
      int ob = obstacle_at(nx, ny, s.t);
      if (ob >= 0) {
        V2 p = scn->objects[ob].position_at(s.t + 1);
        if (p.x == s.x && p.y == s.y) continue;  // head-on swap
      }
      f(SimpState{t1, nx, ny, s.pm, ep_at({nx, ny}, s.ep)},
        kCostScale);
    }
    // rides: board only when the platform sits at this endpoint right now
    for (std::size_t i = 0; i < scn->objects.size(); ++i) {
      if (platform_bit[i] < 0) continue;
      const auto& p = scn->objects[i];
      int L = p.span();
      int duration = L - 1;
      if (duration < 3) continue;  // rides must span at least three ticks
      int i0 = p.index_at(s.t);
      if ((i0 != 0 && i0 != L - 1) || !(p.track[i0] == V2{s.x, s.y})) continue;
      bool clear = true;
      for (int k = 1; k <= duration && clear; ++k) {
        V2 c = p.position_at(s.t + k);
        if (occupied(c.x, c.y, s.t + k)) clear = false;
      }
      if (!clear) continue;
      V2 dest = p.track[i0 == 0 ? L - 1 : 0];
      f(SimpState{(s.t + duration) % T, dest.x, dest.y,
                  s.pm | (1u << platform_bit[i]), ep_at(dest, s.ep)},
        static_cast<Cost>(duration) * kCostScale);
    }
  }
};

}  // namespace

TimeSolution teg_astar_simplified(const TimeScenario& scn) {
  SimpGraph g;
  g.scn = &scn;
  g.T = scn.cycle();
  g.platform_bit.assign(scn.objects.size(), -1);
  int pm_bits = 0;
  for (std::size_t i = 0; i < scn.objects.size(); ++i) {
    const auto& o = scn.objects[i];
    if (o.kind == DynamicObject::Kind::Platform) {
      if (o.span() - 1 >= 3) g.platform_bit[i] = pm_bits++;
    } else {
      g.endpoint_bit.emplace_back(o.track.front(), g.ep_bits++);
      g.endpoint_bit.emplace_back(o.track.back(), g.ep_bits++);
    }
  }
  g.midtrack.assign(static_cast<std::size_t>(scn.w) * scn.h, 0);
  for (const auto& o : scn.objects)
    if (o.kind == DynamicObject::Kind::Platform)
      for (int k = 1; k + 1 < o.span(); ++k)
        g.midtrack[scn.cell(o.track[k].x, o.track[k].y)] = 1;

  std::uint32_t all_p = pm_bits ? (1u << pm_bits) - 1 : 0;
  std::uint32_t all_ep = g.ep_bits ? (1u << g.ep_bits) - 1 : 0;
  SimpState start{0, scn.start.x, scn.start.y, 0, 0};
  start.ep = g.ep_at(scn.start, 0);
  if (!g.standable(scn.start.x, scn.start.y, 0, g.midtrack))
    return infeasible_solution(0);
  V2 goal = scn.goal;
  auto res = astar<SimpGraph>(
      g, {start},
      [goal, all_p, all_ep](const SimpState& s) {
        return s.x == goal.x && s.y == goal.y && s.pm == all_p && s.ep == all_ep;
      },
      [goal](const SimpState& s) {
        return static_cast<Cost>(std::abs(s.x - goal.x) + std::abs(s.y - goal.y)) *
               kCostScale;
      });
  if (!res.feasible) return infeasible_solution(0);

  // reconstruct a policy with absolute ticks
  TimeSolution sol;
  sol.feasible = true;
  sol.cost = res.cost;
  sol.expanded = res.expanded;
  sol.wall_time = res.wall_time;
  int t = 0;
  for (std::size_t i = 0; i + 1 < res.path.size(); ++i) {
    const auto& a = res.path[i];
    const auto& b = res.path[i + 1];
    Primitive pr;
    pr.t = t;
    pr.from = {a.x, a.y};
    pr.to = {b.x, b.y};
    int dt = ((b.t - a.t) % g.T + g.T) % g.T;
    if (dt == 0) dt = g.T;
    if (dt == 1 && l1(pr.from, pr.to) <= 1) {
      pr.action = pr.from == pr.to ? TegAction::Wait : TegAction::Walk;
      pr.ticks = 1;
    } else {
      pr.action = TegAction::Ride;
      pr.ticks = dt;
      for (std::size_t oi = 0; oi < scn.objects.size(); ++oi) {
        const auto& o = scn.objects[oi];
        if (o.kind != DynamicObject::Kind::Platform) continue;
        if (o.position_at(t) == pr.from && o.position_at(t + dt) == pr.to &&
            o.span() - 1 == dt) {
          pr.platform = static_cast<int>(oi);
          break;
        }
      }
      if (pr.platform < 0) throw DomainError("A*: unmatched ride transition");
    }
    t += pr.ticks;
    sol.policy.push_back(pr);
  }
  sol.ticks = t;
  return sol;
}

// ---------------------------------------------------------------------------
// Method 3: forward DP on the truncated TEG under a structured cost field

TimeSolution teg_dp(const TimeScenario& scn, const CostField& field) {
  Teg teg = scn.make_teg(scn.t_max, false);
  teg.set_cost_model(&field);
  if (!teg.contains({scn.start.x, scn.start.y, 0})) return infeasible_solution(0);
  V2 goal = scn.goal;
  auto res = dp_forward(teg, {TState{scn.start.x, scn.start.y, 0}},
                        [goal](const TState& s) { return s.x == goal.x && s.y == goal.y; },
                        scn.t_max);
  if (!res.feasible) return infeasible_solution(0);
  TimeSolution sol;
  sol.feasible = true;
  sol.policy = policy_from_path(teg, res.path);
  sol.cost = res.cost;
  sol.ticks = res.path.back().t;
  sol.expanded = res.expanded;
  sol.wall_time = res.wall_time;
  return sol;
}

TimeSolution teg_dp(const TimeScenario& scn) {
  CostField field(scn, scn.target_ride_ratio, scn.target_min_spacing,
                  scn.cadence_extra);
  return teg_dp(scn, field);
}

// ---------------------------------------------------------------------------
// JSON export

std::string TimeScenario::to_json(const std::vector<Primitive>& policy) const {
  nlohmann::ordered_json j;
  j["grid"] = {w, h};
  j["t_max"] = t_max;
  std::vector<int> flat(solid.begin(), solid.end());
  j["static"] = flat;
  j["objects"] = nlohmann::json::array();
  for (const auto& o : objects) {
    nlohmann::ordered_json jo;
    jo["kind"] = o.kind == DynamicObject::Kind::Platform ? "platform" : "obstacle";
    auto wps = nlohmann::json::array();
    for (const V2& p : o.track) wps.push_back({p.x, p.y});
    jo["waypoints"] = wps;
    jo["period"] = o.period;
    jo["phase"] = o.phase;
    j["objects"].push_back(jo);
  }
  j["start"] = {start.x, start.y};
  j["goal"] = {goal.x, goal.y};
  j["policy"] = nlohmann::json::array();
  for (const auto& pr : policy) {
    nlohmann::ordered_json jp;
    jp["t"] = pr.t;
    jp["action"] = pr.action == TegAction::Wait   ? "WAIT"
                   : pr.action == TegAction::Walk ? "WALK"
                                                  : "RIDE";
    jp["from"] = {pr.from.x, pr.from.y};
    jp["to"] = {pr.to.x, pr.to.y};
    if (pr.action == TegAction::Ride) {
      jp["platform"] = pr.platform;
      jp["ticks"] = pr.ticks;
    }
    j["policy"].push_back(jp);
  }
  return j.dump(2);
}

}  // namespace hdpcg
