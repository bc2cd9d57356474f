#pragma once
// Space direction: potential-shaped skeleton planning (NNB, NP-A*, PF-A*),
// switch planning, two-pass corridor->room grounding with switch-consistency
// rules, and 4D (x,y,z,layer) validation.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hdpcg/deg.hpp"
#include "hdpcg/search.hpp"

namespace hdpcg {

enum class SpaceMethod { NNB, NpAstar, PfAstar };

const char* to_string(SpaceMethod m);

struct SpaceConfig {
  V3 dims{20, 20, 20};
  int switch_count = 10;    // K, fixed for NNB; structured methods derive from rho
  int corridor_depth = 1;   // D1
  int room_depth = 2;       // D2
  Cost switch_cost = kCostScale;  // lambda
  double target_density = 5.0;    // rho, switches per 100 path cells
  int target_min_spacing = 5;     // s_min
  SpaceMethod method = SpaceMethod::NNB;
  std::uint64_t seed = 0;

  // endpoint sampling
  int endpoint_floor = 0;  // 0: use (dx+dy+dz)/3
  int attempt_cap = 25;

  // NNB
  double noise_peak = 50.0;

  // NP-A*
  int np_waypoints = 3;
  double np_waypoint_jitter = 0.25;  // fraction of grid extent
  double dispersion_weight = 1.0;    // alpha
  int dispersion_radius = 3;
  double dispersion_kernel_weight = 5.0;
  int hard_blob_radius = 4;
  double hard_blob_peak = 10000.0;
  int cost_blob_count = 10;
  double cost_blob_radius_lo = 1.5, cost_blob_radius_hi = 2.5;
  double cost_blob_cost_lo = 20.0, cost_blob_cost_hi = 50.0;

  // PF-A*
  double switch_reward = 200.0;  // beta * peak
  int attract_radius = 2;
  double anchor_oversample = 2.0;
  double path_len_estimate_factor = 1.3;  // L-hat = factor * L1(start, goal)

  // grounding
  int room_spacing_mult = 2;  // rooms every room_spacing_mult * D2 steps
  int pocket_open_radius = 1;
  int seal_radius = 2;  // departure-side seal neighborhood around pockets

  int effective_endpoint_floor() const {
    return endpoint_floor > 0 ? endpoint_floor : (dims.x + dims.y + dims.z) / 3;
  }
};

// Additive spatial cost field over a 3D grid; cells hold the cost of entering
// them, fixed-point, clipped to a positive floor before search.
class PotentialField {
 public:
  explicit PotentialField(V3 dims, Cost base = kCostScale);

  V3 dims() const { return dims_; }
  std::size_t index(const V3& p) const {
    return (static_cast<std::size_t>(p.z) * dims_.y + p.y) * dims_.x + p.x;
  }
  bool in_bounds(const V3& p) const {
    return p.x >= 0 && p.y >= 0 && p.z >= 0 && p.x < dims_.x && p.y < dims_.y &&
           p.z < dims_.z;
  }
  // Linear-decay contribution: delta * (1 - dist/radius) for L1 dist < radius.
  void add_blob(const V3& center, double radius, double delta);
  void add_point(const V3& p, double delta);
  Cost enter_cost(const V3& p) const;  // clipped to >= 1
  Cost min_enter_cost() const;

  // search-graph interface
  using State = V3;
  std::uint64_t key(const V3& p) const { return index(p); }
  template <class F>
  void for_each_neighbor(const V3& p, F&& f) const {
    static constexpr std::array<V3, 6> kMoves = {
        V3{-1, 0, 0}, V3{1, 0, 0}, V3{0, -1, 0},
        V3{0, 1, 0},  V3{0, 0, -1}, V3{0, 0, 1}};
    for (const V3& m : kMoves) {
      V3 q{p.x + m.x, p.y + m.y, p.z + m.z};
      if (in_bounds(q)) f(q, enter_cost(q));
    }
  }

 private:
  V3 dims_;
  Cost base_;
  std::vector<double> extra_;
};

struct Skeleton {
  // consecutive nodes are 6-adjacent or an equal-coordinate layer flip
  std::vector<V3> nodes;
  std::vector<int> layers;
  std::vector<int> switch_indices;  // i where layers[i] != layers[i-1]
  int length() const { return static_cast<int>(nodes.size()); }
  std::vector<V3> switch_coords() const;
  void check_invariants() const;  // throws ConstructionError on violation
};

struct TwoLayerLevel {
  V3 dims;
  std::array<std::vector<std::uint8_t>, 2> occ;  // 0 free, 1 solid
  V3 start, goal;
  int start_layer = 0, goal_layer = 0;
  std::vector<V3> pockets;
  SpaceMethod method = SpaceMethod::NNB;
  std::uint64_t seed = 0;
  bool validated = false;

  LayerDeg to_deg(Cost switch_cost) const;
  std::string to_json(const SpaceConfig& cfg) const;
};

// Stage-1 planners. Endpoints are sampled from the seed; on planner failure
// endpoints are resampled up to cfg.attempt_cap.
Skeleton plan_nnb(const SpaceConfig& cfg);
Skeleton plan_np_astar(const SpaceConfig& cfg);
Skeleton plan_pf_astar(const SpaceConfig& cfg);
Skeleton plan_skeleton(const SpaceConfig& cfg);  // dispatch on cfg.method

// Stage-2 grounding.
TwoLayerLevel grow_level(const Skeleton& skel, const SpaceConfig& cfg);

// Stage-3 validation: 4D A* with the Manhattan heuristic, terminating on the
// goal coordinate on any layer.
SearchResult<LState> validate_4d(const TwoLayerLevel& level, Cost switch_cost);

struct SpaceInstance {
  Skeleton skeleton;
  TwoLayerLevel level;
  SearchResult<LState> witness;
  int rejections = 0;  // failed plan/ground/validate attempts before success
};

// Full Space pipeline for one (cfg, seed); nullopt when every attempt was
// rejected.
std::optional<SpaceInstance> generate_space(const SpaceConfig& cfg);

// Switch events (positions where the witness changes layer).
std::vector<V3> witness_switches(const std::vector<LState>& path);

}  // namespace hdpcg
