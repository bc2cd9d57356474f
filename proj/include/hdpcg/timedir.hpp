#pragma once
// Time direction: periodic dynamic-object catalogs, per-tick occupancy masks,
// the static-backbone validator, the simplified cyclic TEG-A*, the structured
// transition cost field, and the TEG-DP solver with policy reconstruction.

#include <optional>
#include <string>
#include <vector>

#include "hdpcg/deg.hpp"
#include "hdpcg/search.hpp"

namespace hdpcg {

enum class TimeMethod { StaticBackbone, TegAstar, TegDp };

const char* to_string(TimeMethod m);

struct DynamicObject {
  enum class Kind { Platform, Obstacle };
  Kind kind = Kind::Obstacle;
  std::vector<V2> track;  // straight zig-line, length = span
  int period = 0;         // 2*span - 2
  int phase = 0;

  int span() const { return static_cast<int>(track.size()); }
  // Reflecting track index: 0,1,...,L-1,L-2,...,1 repeating, shifted by phase.
  int index_at(int t) const;
  V2 position_at(int t) const { return track[index_at(t)]; }
};

struct TimeConfig {
  int w = 30, h = 15;
  int t_max = 200;
  int n_platforms = 4, n_obstacles = 4;
  int platform_span_min = 4, platform_span_max = 6;
  int obstacle_span_min = 3, obstacle_span_max = 5;
  double p_solid = 0.06;
  double target_ride_ratio = 0.30;  // r*
  int target_min_spacing = 10;      // d_min
  int cadence_extra = 2;            // P = d_min + extra (2/3/4 at S/M/L)
  int endpoint_floor = 0;           // 0: (w+h)/3
  TimeMethod method = TimeMethod::TegDp;
  std::uint64_t seed = 0;
  int attempt_cap = 25;

  int effective_endpoint_floor() const {
    return endpoint_floor > 0 ? endpoint_floor : (w + h) / 3;
  }
};

struct TimeScenario {
  int w = 0, h = 0, t_max = 0;
  std::vector<std::uint8_t> solid;
  std::vector<DynamicObject> objects;
  V2 start, goal;
  double target_ride_ratio = 0.30;
  int target_min_spacing = 10;
  int cadence_extra = 2;
  std::uint64_t seed = 0;

  int cell(int x, int y) const { return y * w + x; }
  int cycle() const;  // lcm of object periods (1 when none)
  std::vector<int> platform_ids() const;
  std::vector<int> obstacle_ids() const;
  // Builds a truncated (cyclic=false) or cyclic TEG covering ticks 0..horizon;
  // obstacles populate the occupancy mask, platforms contribute carry edges and
  // mid-track masks.
  Teg make_teg(int horizon, bool cyclic) const;
  std::string to_json(const std::vector<struct Primitive>& policy) const;
};

// Deterministic catalog placement; throws GenerationFailure when the requested
// object counts cannot be placed within the attempt cap.
TimeScenario instantiate_catalog(const TimeConfig& cfg);

// ---------------------------------------------------------------------------
// Structured transition cost field. Penalties/rewards compose per edge and the
// result is clipped to >= 0.

struct CostFieldParams {
  double c_walk = 1.0, c_wait = 1.0, c_ride = 0.25;
  double lambda_cad = 0.5, lambda_uni = 0.3, lambda_saf = 2.0, eta_ep = 0.1;
};

class CostField : public TegCostModel {
 public:
  CostField(const TimeScenario& scn, double target_ride_ratio, int d_min,
            int cadence_extra, CostFieldParams params = {});

  int period() const { return period_; }
  int window() const { return window_; }
  bool in_window(int t) const { return t % period_ < window_; }
  int phase_signal(int t) const { return in_window(t) ? 1 : 0; }  // s_t
  // Danger at the landing cell: obstacle-occupied or 4-adjacent to one at t,
  // or an obstacle enters the cell at t+1.
  bool danger(int x, int y, int t) const;

  Cost edge_cost(const TegEdge& e) const override;

 private:
  const TimeScenario* scn_;
  CostFieldParams params_;
  int period_ = 0, window_ = 0;
};

// ---------------------------------------------------------------------------
// Policies: time-indexed primitives replayable against the scenario.

struct Primitive {
  int t = 0;  // tick the primitive starts on
  TegAction action = TegAction::Wait;
  V2 from, to;
  int platform = -1;  // RIDE only
  int ticks = 1;      // RIDE spans its carried duration; 1 otherwise
};

using Policy = std::vector<Primitive>;

struct ReplayReport {
  bool ok = true;
  std::vector<std::string> violations;  // "tick N: ..." entries
};

// Ground-truth validator: simulates tick-by-tick and checks every primitive
// (occupancy, swap, endpoint-only boarding, horizon).
ReplayReport replay_policy(const TimeScenario& scn, const Policy& pol);

struct TimeSolution {
  bool feasible = false;
  Policy policy;
  Cost cost = 0;
  int ticks = 0;
  long long expanded = 0;
  double wall_time = 0.0;
  int resamples = 0;  // catalog resamples before a feasible instance
};

// Method 1: 2D A* on the static grid, then timing by BFS along the backbone;
// infeasible timing resamples the catalog (bounded by cfg.attempt_cap).
TimeSolution static_backbone_validate(const TimeConfig& cfg, TimeScenario& scn);

// Method 2: simplified cyclic TEG-A* over (t mod T, x, y, platform mask,
// endpoint mask); goal requires the goal cell with all platforms used and all
// obstacle endpoints visited. Feasible, not necessarily minimum-cost.
TimeSolution teg_astar_simplified(const TimeScenario& scn);

// Method 3: forward DP on the truncated TEG under a structured cost field;
// globally minimum-cost within t_max.
TimeSolution teg_dp(const TimeScenario& scn, const CostField& field);
TimeSolution teg_dp(const TimeScenario& scn);  // default field from targets

// Converts a TEG state path into a policy (merging per-tick rides).
Policy policy_from_path(const Teg& g, const std::vector<TState>& path);

}  // namespace hdpcg
