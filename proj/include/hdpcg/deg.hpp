#pragma once
// Dimensional-expanded graphs: a two-layer spatial graph (layer axis) and a
// time-expanded graph (time axis). Edges are enumerated lazily from
// neighborhoods plus feasibility predicates; graphs are immutable after
// construction and safe for concurrent readers.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "hdpcg/core.hpp"

namespace hdpcg {

// ---------------------------------------------------------------------------
// Layer-expanded graph over (x,y,z,layer) with 6-connected spatial moves and
// same-coordinate layer switches at designated switch sites.

struct LState {
  V3 p;
  int layer = 0;
  friend bool operator==(const LState&, const LState&) = default;
};

class LayerDeg {
 public:
  // occ[l] is a dense w*h*d occupancy per layer (0 free, 1 solid), row-major
  // with x fastest. Switch sites must be free on both layers; a site solid on
  // its landing layer is a construction error.
  LayerDeg(V3 dims, std::array<std::vector<std::uint8_t>, 2> occ,
           std::vector<V3> switch_sites, Cost switch_cost);

  using State = LState;

  const V3& dims() const { return dims_; }
  int num_layers() const { return 2; }
  Cost switch_cost() const { return switch_cost_; }
  const std::vector<V3>& switch_sites() const { return switch_sites_; }

  bool in_bounds(const V3& p) const {
    return p.x >= 0 && p.y >= 0 && p.z >= 0 && p.x < dims_.x && p.y < dims_.y &&
           p.z < dims_.z;
  }
  std::size_t cell_index(const V3& p) const {
    return (static_cast<std::size_t>(p.z) * dims_.y + p.y) * dims_.x + p.x;
  }
  bool open(const V3& p, int layer) const {
    return in_bounds(p) && occ_[layer][cell_index(p)] == 0;
  }
  bool is_switch_site(const V3& p) const {
    return in_bounds(p) && switch_mask_[cell_index(p)] != 0;
  }
  bool contains(const LState& s) const {
    return (s.layer == 0 || s.layer == 1) && open(s.p, s.layer);
  }

  std::uint64_t key(const LState& s) const {
    return (static_cast<std::uint64_t>(cell_index(s.p)) << 1) |
           static_cast<std::uint64_t>(s.layer);
  }

  // Spatial moves in fixed axis order (-x,+x,-y,+y,-z,+z), then the layer
  // switch. Throws DomainError when s is not a state of the graph.
  template <class F>
  void for_each_neighbor(const LState& s, F&& f) const {
    if (!contains(s)) throw DomainError("state outside layer DEG");
    static constexpr std::array<V3, 6> kMoves = {
        V3{-1, 0, 0}, V3{1, 0, 0}, V3{0, -1, 0},
        V3{0, 1, 0},  V3{0, 0, -1}, V3{0, 0, 1}};
    for (const V3& m : kMoves) {
      V3 q{s.p.x + m.x, s.p.y + m.y, s.p.z + m.z};
      if (open(q, s.layer)) f(LState{q, s.layer}, kCostScale);
    }
    if (is_switch_site(s.p)) {
      int other = 1 - s.layer;
      if (open(s.p, other)) f(LState{s.p, other}, switch_cost_);
    }
  }

  std::vector<std::pair<LState, Cost>> neighbors(const LState& s) const {
    std::vector<std::pair<LState, Cost>> out;
    for_each_neighbor(s, [&](const LState& t, Cost c) { out.emplace_back(t, c); });
    return out;
  }

 private:
  V3 dims_;
  std::array<std::vector<std::uint8_t>, 2> occ_;
  std::vector<std::uint8_t> switch_mask_;
  std::vector<V3> switch_sites_;
  Cost switch_cost_;
};

// ---------------------------------------------------------------------------
// Time-expanded graph over (x,y,t). Edges run strictly from t to t+1 (mod T in
// cyclic mode): wait, 4-connected walk, and platform carry edges supplied by
// the time module. Head-on swaps with moving obstacles are excluded.

struct TState {
  int x = 0, y = 0, t = 0;
  friend bool operator==(const TState&, const TState&) = default;
};

enum class TegAction : std::uint8_t { Wait, Walk, Ride };

struct TegEdge {
  TState from;
  TState to;
  TegAction action = TegAction::Walk;
  int platform = -1;  // valid for Ride
  bool board = false;
  bool alight = false;
};

// Per-edge cost hook; the default model charges unit cost per tick for
// wait/walk and per carried tick for rides.
class TegCostModel {
 public:
  virtual ~TegCostModel() = default;
  virtual Cost edge_cost(const TegEdge& e) const;
};

struct CarryEdge {
  int from_cell = 0;
  int to_cell = 0;
  int platform = 0;
  bool board = false;   // leaves an endpoint
  bool alight = false;  // enters an endpoint
};

class Teg {
 public:
  // occ / obst_id cover ticks 0..horizon inclusive ((horizon+1)*w*h entries);
  // obst_id holds -1 for free cells and the obstacle index otherwise.
  // midtrack marks platform interior cells (never walkable). carry[t] lists
  // the carry edges active on tick t, sorted by (from_cell, platform).
  Teg(int w, int h, int horizon, bool cyclic,
      std::vector<std::uint8_t> static_solid, std::vector<std::int16_t> obst_id,
      std::vector<std::uint8_t> midtrack,
      std::vector<std::vector<CarryEdge>> carry);

  using State = TState;

  int width() const { return w_; }
  int height() const { return h_; }
  int horizon() const { return horizon_; }
  bool cyclic() const { return cyclic_; }

  void set_cost_model(const TegCostModel* m) { costs_ = m; }

  int cell(int x, int y) const { return y * w_ + x; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < w_ && y < h_;
  }
  int tick_index(int t) const { return cyclic_ ? ((t % horizon_) + horizon_) % horizon_ : t; }
  bool static_open(int x, int y) const {
    return in_bounds(x, y) && !static_solid_[cell(x, y)] && !midtrack_[cell(x, y)];
  }
  bool occupied(int x, int y, int t) const {
    return obst_id_[static_cast<std::size_t>(tick_index(t)) * w_ * h_ + cell(x, y)] >= 0;
  }
  int obstacle_at(int x, int y, int t) const {
    return obst_id_[static_cast<std::size_t>(tick_index(t)) * w_ * h_ + cell(x, y)];
  }
  bool midtrack(int x, int y) const { return midtrack_[cell(x, y)] != 0; }
  // Open for standing at tick t (walk/wait landing check).
  bool open(int x, int y, int t) const {
    return static_open(x, y) && !occupied(x, y, t);
  }
  bool contains(const TState& s) const {
    if (!in_bounds(s.x, s.y)) return false;
    if (!cyclic_ && (s.t < 0 || s.t > horizon_)) return false;
    return midtrack_[cell(s.x, s.y)] ? true : open(s.x, s.y, s.t);
  }

  std::uint64_t key(const TState& s) const {
    return (static_cast<std::uint64_t>(tick_index(s.t)) * h_ + s.y) * w_ + s.x;
  }

  // Edge order: wait, walks (-x,+x,-y,+y), then carry edges by platform id.
  template <class F>
  void for_each_neighbor(const TState& s, F&& f) const {
    if (!in_bounds(s.x, s.y)) throw DomainError("state outside TEG");
    if (!cyclic_ && s.t >= horizon_) return;
    int t1 = s.t + 1;
    bool on_track = midtrack_[cell(s.x, s.y)] != 0;
    if (!on_track) {
      if (open(s.x, s.y, t1)) {
        emit(f, TegEdge{s, {s.x, s.y, t1}, TegAction::Wait, -1, false, false});
      }
      static constexpr int dx[4] = {-1, 1, 0, 0};
      static constexpr int dy[4] = {0, 0, -1, 1};
      for (int i = 0; i < 4; ++i) {
        int nx = s.x + dx[i], ny = s.y + dy[i];
        if (!in_bounds(nx, ny) || !open(nx, ny, t1)) continue;
        // head-on swap: an obstacle at the landing cell moving into ours
        int ob = obstacle_at(nx, ny, s.t);
        if (ob >= 0 && obstacle_at(s.x, s.y, t1) == ob) continue;
        emit(f, TegEdge{s, {nx, ny, t1}, TegAction::Walk, -1, false, false});
      }
    }
    const auto& edges = carry_[tick_index(s.t)];
    int c = cell(s.x, s.y);
    auto it = std::lower_bound(
        edges.begin(), edges.end(), c,
        [](const CarryEdge& e, int v) { return e.from_cell < v; });
    for (; it != edges.end() && it->from_cell == c; ++it) {
      int tx = it->to_cell % w_, ty = it->to_cell / w_;
      if (occupied(tx, ty, t1)) continue;  // platform frame collides
      emit(f, TegEdge{s, {tx, ty, t1}, TegAction::Ride, it->platform, it->board,
                      it->alight});
    }
  }

  std::vector<std::pair<TState, Cost>> neighbors(const TState& s) const {
    std::vector<std::pair<TState, Cost>> out;
    for_each_neighbor(s, [&](const TState& t, Cost c) { out.emplace_back(t, c); });
    return out;
  }

  // Full edge info variant used by policy reconstruction.
  std::vector<TegEdge> out_edges(const TState& s) const {
    std::vector<TegEdge> out;
    if (!in_bounds(s.x, s.y)) throw DomainError("state outside TEG");
    collect(s, out);
    return out;
  }

  Cost edge_cost(const TegEdge& e) const;

 private:
  template <class F>
  void emit(F& f, const TegEdge& e) const {
    f(e.to, edge_cost(e));
  }
  void collect(const TState& s, std::vector<TegEdge>& out) const;

  int w_, h_, horizon_;
  bool cyclic_;
  std::vector<std::uint8_t> static_solid_;
  std::vector<std::int16_t> obst_id_;
  std::vector<std::uint8_t> midtrack_;
  std::vector<std::vector<CarryEdge>> carry_;
  const TegCostModel* costs_ = nullptr;
};

}  // namespace hdpcg
