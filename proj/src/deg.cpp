#include "hdpcg/deg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdpcg {

LayerDeg::LayerDeg(V3 dims, std::array<std::vector<std::uint8_t>, 2> occ,
                   std::vector<V3> switch_sites, Cost switch_cost)
    : dims_(dims),
      occ_(std::move(occ)),
      switch_sites_(std::move(switch_sites)),
      switch_cost_(switch_cost) {
  if (dims_.x < 1 || dims_.y < 1 || dims_.z < 1)
    throw ConstructionError("layer DEG: all extents must be >= 1");
  std::size_t n = static_cast<std::size_t>(dims_.x) * dims_.y * dims_.z;
  for (int l = 0; l < 2; ++l)
    if (occ_[l].size() != n)
      throw ConstructionError("layer DEG: occupancy size mismatch");
  if (switch_cost_ < 0)
    throw ConstructionError("layer DEG: negative switch cost");
  switch_mask_.assign(n, 0);
  for (const V3& p : switch_sites_) {
    if (!in_bounds(p)) throw ConstructionError("layer DEG: switch site out of bounds");
    if (occ_[0][cell_index(p)] || occ_[1][cell_index(p)])
      throw ConstructionError("switch site solid on a layer at (" +
                              std::to_string(p.x) + "," + std::to_string(p.y) +
                              "," + std::to_string(p.z) + ")");
    switch_mask_[cell_index(p)] = 1;
  }
}

Cost TegCostModel::edge_cost(const TegEdge& e) const {
  (void)e;
  return kCostScale;
}

namespace {
const TegCostModel kUnitCosts;
}

Teg::Teg(int w, int h, int horizon, bool cyclic,
         std::vector<std::uint8_t> static_solid,
         std::vector<std::int16_t> obst_id, std::vector<std::uint8_t> midtrack,
         std::vector<std::vector<CarryEdge>> carry)
    : w_(w),
      h_(h),
      horizon_(horizon),
      cyclic_(cyclic),
      static_solid_(std::move(static_solid)),
      obst_id_(std::move(obst_id)),
      midtrack_(std::move(midtrack)),
      carry_(std::move(carry)) {
  if (w_ < 1 || h_ < 1 || horizon_ < 1)
    throw ConstructionError("TEG: extents and horizon must be >= 1");
  std::size_t cells = static_cast<std::size_t>(w_) * h_;
  std::size_t ticks = cyclic_ ? horizon_ : horizon_ + 1;
  if (static_solid_.size() != cells || midtrack_.size() != cells)
    throw ConstructionError("TEG: static mask size mismatch");
  if (obst_id_.size() < ticks * cells)
    throw ConstructionError("TEG: occupancy mask shorter than horizon");
  if (carry_.size() < ticks) carry_.resize(ticks);
  for (auto& v : carry_)
    std::sort(v.begin(), v.end(), [](const CarryEdge& a, const CarryEdge& b) {
      return a.from_cell != b.from_cell ? a.from_cell < b.from_cell
                                        : a.platform < b.platform;
    });
}

Cost Teg::edge_cost(const TegEdge& e) const {
  return (costs_ ? costs_ : &kUnitCosts)->edge_cost(e);
}

void Teg::collect(const TState& s, std::vector<TegEdge>& out) const {
  if (!cyclic_ && s.t >= horizon_) return;
  int t1 = s.t + 1;
  bool on_track = midtrack_[cell(s.x, s.y)] != 0;
  if (!on_track) {
    if (open(s.x, s.y, t1))
      out.push_back({s, {s.x, s.y, t1}, TegAction::Wait, -1, false, false});
    static constexpr int dx[4] = {-1, 1, 0, 0};
    static constexpr int dy[4] = {0, 0, -1, 1};
    for (int i = 0; i < 4; ++i) {
      int nx = s.x + dx[i], ny = s.y + dy[i];
      if (!in_bounds(nx, ny) || !open(nx, ny, t1)) continue;
      int ob = obstacle_at(nx, ny, s.t);
      if (ob >= 0 && obstacle_at(s.x, s.y, t1) == ob) continue;
      out.push_back({s, {nx, ny, t1}, TegAction::Walk, -1, false, false});
    }
  }
  const auto& edges = carry_[tick_index(s.t)];
  int c = cell(s.x, s.y);
  auto it = std::lower_bound(edges.begin(), edges.end(), c,
                             [](const CarryEdge& e, int v) { return e.from_cell < v; });
  for (; it != edges.end() && it->from_cell == c; ++it) {
    int tx = it->to_cell % w_, ty = it->to_cell / w_;
    if (occupied(tx, ty, t1)) continue;
    out.push_back({s, {tx, ty, t1}, TegAction::Ride, it->platform, it->board, it->alight});
  }
}

}  // namespace hdpcg
