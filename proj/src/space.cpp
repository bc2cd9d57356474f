#include "hdpcg/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hdpcg {

const char* to_string(SpaceMethod m) {
  switch (m) {
    case SpaceMethod::NNB: return "NNB";
    case SpaceMethod::NpAstar: return "NP-A*";
    case SpaceMethod::PfAstar: return "PF-A*";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// PotentialField

PotentialField::PotentialField(V3 dims, Cost base) : dims_(dims), base_(base) {
  extra_.assign(static_cast<std::size_t>(dims.x) * dims.y * dims.z, 0.0);
}

void PotentialField::add_blob(const V3& c, double radius, double delta) {
  int r = static_cast<int>(std::ceil(radius));
  for (int dz = -r; dz <= r; ++dz)
    for (int dy = -r; dy <= r; ++dy)
      for (int dx = -r; dx <= r; ++dx) {
        int dist = std::abs(dx) + std::abs(dy) + std::abs(dz);
        if (dist >= radius) continue;
        V3 p{c.x + dx, c.y + dy, c.z + dz};
        if (!in_bounds(p)) continue;
        extra_[index(p)] += delta * (1.0 - dist / radius);
      }
}

void PotentialField::add_point(const V3& p, double delta) {
  if (in_bounds(p)) extra_[index(p)] += delta;
}

Cost PotentialField::enter_cost(const V3& p) const {
  Cost c = base_ + cost_from(extra_[index(p)]);
  return c < 1 ? 1 : c;
}

Cost PotentialField::min_enter_cost() const {
  double lo = 0.0;
  for (double e : extra_) lo = std::min(lo, e);
  Cost c = base_ + cost_from(lo);
  return c < 1 ? 1 : c;
}

// ---------------------------------------------------------------------------
// Skeleton

std::vector<V3> Skeleton::switch_coords() const {
  std::vector<V3> out;
  out.reserve(switch_indices.size());
  for (int i : switch_indices) out.push_back(nodes[i]);
  return out;
}

void Skeleton::check_invariants() const {
  if (nodes.size() != layers.size() || nodes.empty())
    throw ConstructionError("skeleton: node/layer size mismatch");
  std::set<int> sw(switch_indices.begin(), switch_indices.end());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    bool adj = layers[i] == layers[i - 1] && l1(nodes[i], nodes[i - 1]) == 1;
    bool flip = nodes[i] == nodes[i - 1] && layers[i] != layers[i - 1];
    if (!(adj || flip)) throw ConstructionError("skeleton: illegal step");
    if (flip != (sw.count(static_cast<int>(i)) > 0))
      throw ConstructionError("skeleton: switch index mismatch");
  }
  if (sw.count(0) || sw.count(static_cast<int>(nodes.size()) - 1))
    throw ConstructionError("skeleton: endpoint switch");
}

// ---------------------------------------------------------------------------
// planning helpers

namespace {

V3 clamp_interior(V3 p, const V3& dims) {
  p.x = std::clamp(p.x, 1, dims.x - 2);
  p.y = std::clamp(p.y, 1, dims.y - 2);
  p.z = std::clamp(p.z, 1, dims.z - 2);
  return p;
}

std::pair<V3, V3> sample_endpoints(Rng& rng, const SpaceConfig& cfg) {
  int floor = cfg.effective_endpoint_floor();
  for (int i = 0; i < 1000; ++i) {
    V3 a{rand_int(rng, 0, cfg.dims.x - 1), rand_int(rng, 0, cfg.dims.y - 1),
         rand_int(rng, 0, cfg.dims.z - 1)};
    V3 b{rand_int(rng, 0, cfg.dims.x - 1), rand_int(rng, 0, cfg.dims.y - 1),
         rand_int(rng, 0, cfg.dims.z - 1)};
    if (l1(a, b) >= floor) return {a, b};
  }
  throw GenerationFailure("endpoint sampling: Manhattan floor unsatisfiable");
}

std::vector<V3> plan_route(const PotentialField& field, V3 start, V3 goal) {
  Cost cmin = field.min_enter_cost();
  auto res = astar<PotentialField>(
      field, {start}, [goal](const V3& p) { return p == goal; },
      [goal, cmin](const V3& p) { return static_cast<Cost>(l1(p, goal)) * cmin; });
  if (!res.feasible) return {};
  return res.path;
}

// Builds a skeleton from a 3D polyline and sorted interior flip indices.
Skeleton assemble(const std::vector<V3>& route, const std::vector<int>& flips) {
  Skeleton sk;
  int layer = 0;
  std::size_t fi = 0;
  for (std::size_t i = 0; i < route.size(); ++i) {
    sk.nodes.push_back(route[i]);
    sk.layers.push_back(layer);
    if (fi < flips.size() && static_cast<std::size_t>(flips[fi]) == i) {
      ++fi;
      layer = 1 - layer;
      sk.switch_indices.push_back(static_cast<int>(sk.nodes.size()));
      sk.nodes.push_back(route[i]);
      sk.layers.push_back(layer);
    }
  }
  sk.check_invariants();
  return sk;
}

// Near-uniform interior indices with slight jitter, exactly k of them.
std::vector<int> uniform_jittered_indices(Rng& rng, int route_len, int k) {
  int m = route_len - 1;  // highest index
  if (k <= 0 || m < 2) return {};
  k = std::min(k, m - 1);
  int jit = std::max(0, m / (4 * (k + 1)));
  for (int round_ = 0; round_ < 50; ++round_) {
    std::set<int> idx;
    for (int i = 1; i <= k; ++i) {
      int base = static_cast<int>(std::lround(static_cast<double>(i) * m / (k + 1)));
      int j = jit > 0 ? rand_int(rng, -jit, jit) : 0;
      idx.insert(std::clamp(base + j, 1, m - 1));
    }
    if (static_cast<int>(idx.size()) == k) return {idx.begin(), idx.end()};
  }
  // fill deterministically after repeated jitter collisions
  std::set<int> idx;
  for (int i = 1; i <= k && static_cast<int>(idx.size()) < k; ++i)
    idx.insert(std::clamp(static_cast<int>(std::lround(static_cast<double>(i) * m / (k + 1))), 1, m - 1));
  for (int i = 1; i < m && static_cast<int>(idx.size()) < k; ++i) idx.insert(i);
  return {idx.begin(), idx.end()};
}

void add_cost_blobs(PotentialField& field, Rng& rng, const SpaceConfig& cfg) {
  for (int i = 0; i < cfg.cost_blob_count; ++i) {
    V3 c{rand_int(rng, 0, cfg.dims.x - 1), rand_int(rng, 0, cfg.dims.y - 1),
         rand_int(rng, 0, cfg.dims.z - 1)};
    double radius = rand_real(rng, cfg.cost_blob_radius_lo, cfg.cost_blob_radius_hi);
    double cost = rand_real(rng, cfg.cost_blob_cost_lo, cfg.cost_blob_cost_hi);
    field.add_blob(c, radius, cfg.dispersion_weight * cost);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Method 1: naive noise baseline

Skeleton plan_nnb(const SpaceConfig& cfg) {
  for (int attempt = 0; attempt < cfg.attempt_cap; ++attempt) {
    Rng rng(cfg.seed * 1000003ULL + attempt);
    auto [start, goal] = sample_endpoints(rng, cfg);
    PotentialField field(cfg.dims);
    for (int z = 0; z < cfg.dims.z; ++z)
      for (int y = 0; y < cfg.dims.y; ++y)
        for (int x = 0; x < cfg.dims.x; ++x)
          field.add_point({x, y, z}, rand_real(rng, 0.0, cfg.noise_peak));
    auto route = plan_route(field, start, goal);
    if (route.empty()) continue;
    auto flips = uniform_jittered_indices(rng, static_cast<int>(route.size()),
                                          cfg.switch_count);
    return assemble(route, flips);
  }
  throw GenerationFailure("NNB: no 3D route within attempt cap");
}

// ---------------------------------------------------------------------------
// Method 2: naive penalty A* (dispersion-aware, segment-wise)

Skeleton plan_np_astar(const SpaceConfig& cfg) {
  for (int attempt = 0; attempt < cfg.attempt_cap; ++attempt) {
    Rng rng(cfg.seed * 1000003ULL + 17 + attempt);
    auto [start, goal] = sample_endpoints(rng, cfg);
    PotentialField field(cfg.dims);
    add_cost_blobs(field, rng, cfg);

    std::vector<V3> waypoints;
    for (int r = 1; r <= cfg.np_waypoints; ++r) {
      double f = static_cast<double>(r) / (cfg.np_waypoints + 1);
      V3 base{static_cast<int>(std::lround(start.x + f * (goal.x - start.x))),
              static_cast<int>(std::lround(start.y + f * (goal.y - start.y))),
              static_cast<int>(std::lround(start.z + f * (goal.z - start.z)))};
      int jx = static_cast<int>(cfg.np_waypoint_jitter * cfg.dims.x);
      int jy = static_cast<int>(cfg.np_waypoint_jitter * cfg.dims.y);
      int jz = static_cast<int>(cfg.np_waypoint_jitter * cfg.dims.z);
      base.x += rand_int(rng, -jx, jx);
      base.y += rand_int(rng, -jy, jy);
      base.z += rand_int(rng, -jz, jz);
      waypoints.push_back(clamp_interior(base, cfg.dims));
    }
    waypoints.push_back(goal);

    std::vector<V3> route{start};
    std::set<std::size_t> waypoint_indices;
    bool ok = true;
    V3 cur = start;
    for (std::size_t seg = 0; seg < waypoints.size(); ++seg) {
      auto part = plan_route(field, cur, waypoints[seg]);
      if (part.empty()) {
        ok = false;
        break;
      }
      route.insert(route.end(), part.begin() + 1, part.end());
      waypoint_indices.insert(route.size() - 1);
      // accumulate dispersion around the voxels just carved
      for (const V3& v : part) {
        field.add_blob(v, cfg.hard_blob_radius,
                       cfg.dispersion_weight * cfg.hard_blob_peak);
        field.add_blob(v, cfg.dispersion_radius,
                       cfg.dispersion_weight * cfg.dispersion_kernel_weight);
      }
      cur = waypoints[seg];
    }
    if (!ok) continue;

    int m = static_cast<int>(route.size()) - 1;
    int k = std::max(0, static_cast<int>(std::lround(cfg.target_density * m / 100.0)));
    int min_gap = std::max(2, cfg.target_min_spacing / 2);
    std::set<int> idx;
    for (int tries = 0; tries < 200 && static_cast<int>(idx.size()) < k; ++tries) {
      int i = rand_int(rng, 1, std::max(1, m - 1));
      if (waypoint_indices.count(i)) continue;
      bool clash = false;
      for (int j : idx)
        if (std::abs(j - i) < min_gap) clash = true;
      if (!clash) idx.insert(i);
    }
    // best-effort fill when rejection stalls
    for (int i = 1; i < m && static_cast<int>(idx.size()) < k; ++i) {
      if (waypoint_indices.count(i) || idx.count(i)) continue;
      bool clash = false;
      for (int j : idx)
        if (std::abs(j - i) < min_gap) clash = true;
      if (!clash) idx.insert(i);
    }
    return assemble(route, {idx.begin(), idx.end()});
  }
  throw GenerationFailure("NP-A*: segment infeasible within attempt cap");
}

// ---------------------------------------------------------------------------
// Method 3: potential-field A* with explicit switch anchors

Skeleton plan_pf_astar(const SpaceConfig& cfg) {
  for (int attempt = 0; attempt < cfg.attempt_cap; ++attempt) {
    Rng rng(cfg.seed * 1000003ULL + 29 + attempt);
    auto [start, goal] = sample_endpoints(rng, cfg);

    double lhat = cfg.path_len_estimate_factor * l1(start, goal);
    int want = std::max(1, static_cast<int>(std::lround(
                               cfg.target_density * lhat / 100.0 * cfg.anchor_oversample)));
    std::vector<V3> anchors;
    for (int i = 0; i < 1000 && static_cast<int>(anchors.size()) < want; ++i) {
      V3 q = clamp_interior(
          {rand_int(rng, 1, cfg.dims.x - 2), rand_int(rng, 1, cfg.dims.y - 2),
           rand_int(rng, 1, cfg.dims.z - 2)},
          cfg.dims);
      if (l1(q, start) < 3 || l1(q, goal) < 3) continue;
      bool ok = true;
      for (const V3& a : anchors)
        if (l1(a, q) < cfg.target_min_spacing) ok = false;
      if (ok) anchors.push_back(q);
    }
    if (anchors.empty()) continue;

    PotentialField field(cfg.dims);
    add_cost_blobs(field, rng, cfg);
    for (const V3& a : anchors)
      field.add_blob(a, cfg.attract_radius, -cfg.switch_reward);

    auto route = plan_route(field, start, goal);
    if (route.empty()) continue;

    std::set<std::size_t> anchor_keys;
    for (const V3& a : anchors)
      anchor_keys.insert(field.index(a));
    std::vector<int> flips;
    for (std::size_t i = 1; i + 1 < route.size(); ++i)
      if (anchor_keys.count(field.index(route[i])))
        flips.push_back(static_cast<int>(i));
    if (flips.empty()) continue;  // threads fewer than 1 anchor
    return assemble(route, flips);
  }
  throw GenerationFailure("PF-A*: route threads no anchor within attempt cap");
}

Skeleton plan_skeleton(const SpaceConfig& cfg) {
  switch (cfg.method) {
    case SpaceMethod::NNB: return plan_nnb(cfg);
    case SpaceMethod::NpAstar: return plan_np_astar(cfg);
    case SpaceMethod::PfAstar: return plan_pf_astar(cfg);
  }
  throw DomainError("unknown space method");
}

// ---------------------------------------------------------------------------
// Stage 2: corridor -> room growth

TwoLayerLevel grow_level(const Skeleton& skel, const SpaceConfig& cfg) {
  skel.check_invariants();
  TwoLayerLevel lvl;
  lvl.dims = cfg.dims;
  lvl.method = cfg.method;
  lvl.seed = cfg.seed;
  std::size_t cells = static_cast<std::size_t>(cfg.dims.x) * cfg.dims.y * cfg.dims.z;
  lvl.occ[0].assign(cells, 1);
  lvl.occ[1].assign(cells, 1);

  auto cell_index = [&](const V3& p) {
    return (static_cast<std::size_t>(p.z) * cfg.dims.y + p.y) * cfg.dims.x + p.x;
  };
  auto in_bounds = [&](const V3& p) {
    return p.x >= 0 && p.y >= 0 && p.z >= 0 && p.x < cfg.dims.x &&
           p.y < cfg.dims.y && p.z < cfg.dims.z;
  };

  // seal departure-side cells around each switch pocket
  std::array<std::vector<std::uint8_t>, 2> sealed{
      std::vector<std::uint8_t>(cells, 0), std::vector<std::uint8_t>(cells, 0)};
  static constexpr std::array<V3, 6> kMoves = {
      V3{-1, 0, 0}, V3{1, 0, 0}, V3{0, -1, 0},
      V3{0, 1, 0},  V3{0, 0, -1}, V3{0, 0, 1}};
  int rs = cfg.seal_radius;
  for (int si : skel.switch_indices) {
    V3 q = skel.nodes[si];
    int depart = skel.layers[si - 1];
    for (int dz = -rs; dz <= rs; ++dz)
      for (int dy = -rs; dy <= rs; ++dy)
        for (int dx = -rs; dx <= rs; ++dx) {
          if (std::abs(dx) + std::abs(dy) + std::abs(dz) > rs) continue;
          V3 p{q.x + dx, q.y + dy, q.z + dz};
          if (!in_bounds(p) || p == q) continue;
          sealed[depart][cell_index(p)] = 1;
        }
  }
  // the skeleton itself is exempt: its cells stay carvable on their layer,
  // so the approach to each pocket narrows to the planned route
  for (std::size_t i = 0; i < skel.nodes.size(); ++i)
    sealed[skel.layers[i]][cell_index(skel.nodes[i])] = 0;

  // carved_by[l][cell]: skeleton index that first carved the cell, or -1
  std::array<std::vector<int>, 2> carved_by{std::vector<int>(cells, -1),
                                            std::vector<int>(cells, -1)};
  int merge_window = cfg.room_spacing_mult * cfg.room_depth + 1;
  auto carve = [&](const V3& p, int layer, int idx, bool check_conflict) {
    if (!in_bounds(p) || sealed[layer][cell_index(p)]) return;
    std::size_t ci = cell_index(p);
    if (lvl.occ[layer][ci] == 0) return;  // already open
    if (check_conflict) {
      // reject carvings that would merge distant corridor sections
      for (const V3& m : kMoves) {
        V3 n{p.x + m.x, p.y + m.y, p.z + m.z};
        if (!in_bounds(n)) continue;
        int other = carved_by[layer][cell_index(n)];
        if (other >= 0 && std::abs(other - idx) > merge_window) return;
      }
      int same = carved_by[layer][ci];
      if (same >= 0 && std::abs(same - idx) > merge_window) return;
    }
    lvl.occ[layer][ci] = 0;
    carved_by[layer][ci] = idx;
  };

  // pass 1: corridors of depth D1 around every skeleton node
  int r1 = cfg.corridor_depth - 1;
  for (std::size_t i = 0; i < skel.nodes.size(); ++i) {
    carve(skel.nodes[i], skel.layers[i], static_cast<int>(i), false);
    for (int dz = -r1; dz <= r1; ++dz)
      for (int dy = -r1; dy <= r1; ++dy)
        for (int dx = -r1; dx <= r1; ++dx) {
          if (std::abs(dx) + std::abs(dy) + std::abs(dz) > r1) continue;
          V3 p{skel.nodes[i].x + dx, skel.nodes[i].y + dy, skel.nodes[i].z + dz};
          carve(p, skel.layers[i], static_cast<int>(i), true);
        }
  }
  // skeleton cells must be open despite conflict checks
  for (std::size_t i = 0; i < skel.nodes.size(); ++i)
    if (lvl.occ[skel.layers[i]][cell_index(skel.nodes[i])])
      throw GenerationFailure("corridor carving failed on the skeleton");

  // pass 2: rooms every room_spacing_mult*D2 steps
  int step = std::max(1, cfg.room_spacing_mult * cfg.room_depth);
  for (std::size_t i = 0; i < skel.nodes.size(); i += step) {
    int d2 = cfg.room_depth;
    for (int dz = -d2; dz <= d2; ++dz)
      for (int dy = -d2; dy <= d2; ++dy)
        for (int dx = -d2; dx <= d2; ++dx) {
          V3 p{skel.nodes[i].x + dx, skel.nodes[i].y + dy, skel.nodes[i].z + dz};
          carve(p, skel.layers[i], static_cast<int>(i), true);
        }
  }

  // switch pockets: bi-layer open cell plus a landing-side opening
  for (int si : skel.switch_indices) {
    V3 q = skel.nodes[si];
    int landing = skel.layers[si];
    lvl.occ[0][cell_index(q)] = 0;
    lvl.occ[1][cell_index(q)] = 0;
    lvl.pockets.push_back(q);
    int ro = cfg.pocket_open_radius;
    for (int dz = -ro; dz <= ro; ++dz)
      for (int dy = -ro; dy <= ro; ++dy)
        for (int dx = -ro; dx <= ro; ++dx) {
          if (std::abs(dx) + std::abs(dy) + std::abs(dz) > ro) continue;
          V3 p{q.x + dx, q.y + dy, q.z + dz};
          carve(p, landing, si, false);
        }
  }

  lvl.start = skel.nodes.front();
  lvl.goal = skel.nodes.back();
  lvl.start_layer = skel.layers.front();
  lvl.goal_layer = skel.layers.back();
  return lvl;
}

// ---------------------------------------------------------------------------
// Stage 3: 4D validation

LayerDeg TwoLayerLevel::to_deg(Cost switch_cost) const {
  return LayerDeg(dims, occ, pockets, switch_cost);
}

SearchResult<LState> validate_4d(const TwoLayerLevel& level, Cost switch_cost) {
  LayerDeg g = level.to_deg(switch_cost);
  V3 goal = level.goal;
  return astar<LayerDeg>(
      g, {LState{level.start, level.start_layer}},
      [goal](const LState& s) { return s.p == goal; },
      [goal](const LState& s) { return static_cast<Cost>(l1(s.p, goal)) * kCostScale; });
}

std::vector<V3> witness_switches(const std::vector<LState>& path) {
  std::vector<V3> out;
  for (std::size_t i = 1; i < path.size(); ++i)
    if (path[i].layer != path[i - 1].layer) out.push_back(path[i].p);
  return out;
}

std::optional<SpaceInstance> generate_space(const SpaceConfig& cfg) {
  int rejections = 0;
  for (int attempt = 0; attempt < cfg.attempt_cap; ++attempt) {
    SpaceConfig c = cfg;
    c.seed = cfg.seed + 7919ULL * attempt;
    try {
      SpaceInstance inst;
      inst.skeleton = plan_skeleton(c);
      inst.level = grow_level(inst.skeleton, c);
      inst.witness = validate_4d(inst.level, c.switch_cost);
      if (!inst.witness.feasible) {
        ++rejections;
        continue;
      }
      inst.level.validated = true;
      inst.rejections = rejections;
      return inst;
    } catch (const GenerationFailure&) {
      ++rejections;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON export (Unity loader schema)

std::string TwoLayerLevel::to_json(const SpaceConfig& cfg) const {
  nlohmann::ordered_json j;
  j["width"] = dims.x;
  j["height"] = dims.y;
  j["depth"] = dims.z;
  j["start"] = {start.x, start.y, start.z};
  j["end"] = {goal.x, goal.y, goal.z};
  j["layers"] = nlohmann::json::array();
  for (int l = 0; l < 2; ++l) {
    std::vector<int> flat(occ[l].begin(), occ[l].end());
    j["layers"].push_back(flat);
  }
  auto pk = nlohmann::json::array();
  for (const V3& p : pockets) pk.push_back({p.x, p.y, p.z});
  j["switch_pockets"] = pk;
  j["meta"] = {{"method", to_string(cfg.method)},
               {"seed", cfg.seed},
               {"K", cfg.switch_count},
               {"rho", cfg.target_density},
               {"s_min", cfg.target_min_spacing},
               {"lambda", cost_to_double(cfg.switch_cost)}};
  return j.dump(2);
}

}  // namespace hdpcg
