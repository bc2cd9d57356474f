#pragma once
// Structural metrics for the Space direction, interaction metrics for the
// Time direction, and the composite weighted score. Several named metrics
// (SEF, DER, tortuosity, ARR, uniformity, dispersion, coverage) are documented
// surrogate formalizations; undefined events are NaN and excluded upstream.

#include <vector>

#include "hdpcg/space.hpp"
#include "hdpcg/timedir.hpp"

namespace hdpcg {

struct CompositeWeights {
  double len = 0.5;         // alpha_l (sign-flipped: shorter is better)
  double uniformity = 1.0;  // alpha_u
  double dispersion = 2.0;  // alpha_d
  double min_len = 2.0;     // alpha_m
  double coverage = 1.5;    // alpha_c
};

struct SpaceMetrics {
  double len = 0.0;           // witness path length (edges)
  double rho_hat = 0.0;       // switches per 100 path cells
  double spc = 0.0;           // spacing success (NaN when no pairs)
  double uniformity = 0.0;    // 1 - CV of inter-switch segment lengths
  double dispersion = 0.0;    // mean pairwise switch L1 / grid semiperimeter
  double min_len_ok = 0.0;    // fraction of inter-switch segments >= s_min
  double coverage = 0.0;      // fraction of 4x4x4 spatial blocks visited
  double der = 0.0;           // dead-end cells per 100 free cells
  double sef = 0.0;           // mean landing-layer openness at pockets
  double tortuosity = 0.0;    // len / L1(start, goal)
  double branching = 0.0;     // mean open-neighbor count along the witness
  double layer_balance = 0.0; // |ticks on L0 - L1| / total
  double wall_time = 0.0;
};

SpaceMetrics space_metrics(const SpaceInstance& inst, const SpaceConfig& cfg);

// SPC = 1 - violation rate over consecutive switch pairs; NaN without pairs.
double spacing_success(const std::vector<V3>& switches, int s_min);

// Achieved switch density per 100 path cells.
double achieved_density(int switches, int path_len);

// MAE over |rho_hat - rho| pairs, NaN-aware; empty input -> NaN.
double density_mae(const std::vector<std::pair<double, double>>& target_achieved);

// Composite weighted score per run: z-scores within the given run set (one
// scale), Len sign-flipped, zero-variance/NaN components contribute 0.
std::vector<double> composite_scores(const std::vector<SpaceMetrics>& runs,
                                     const CompositeWeights& w = {});

// Fraction of interior witness nodes whose removal still admits a valid 4D
// route with cost <= (1+eps) * nominal. NaN for degenerate witnesses.
double arr_estimate(const TwoLayerLevel& level, const SearchResult<LState>& witness,
                    Cost switch_cost, double eps = 0.25);

struct TimeMetrics {
  double ride_ratio = 0.0;      // r-hat
  double mae_r = 0.0;           // |r-hat - r|
  double spacing_success = 0.0; // 1 - violation rate of inter-event gaps
  double cv_intervals = 0.0;    // CV of inter-event intervals
  double wait_ratio = 0.0;
  int transfers = 0;
  int near_swaps = 0;
  int ticks = 0;
  double coverage = 0.0;        // distinct visited cells / free cells
  double platform_coverage = 0.0;  // fraction of platforms used
  double j_time = 0.0;
  double wall_time = 0.0;
};

struct JTimeWeights {
  // Engine defaults, reported with every output record.
  double length = -0.15;       // per tick
  double coverage = 5.0;
  double ride = 10.0;
  double wait = -5.0;
  double interaction = 2.0;    // fraction of platforms used
  double safety = -2.0;        // per near-swap
};

// One O(T) pass over a validated policy.
TimeMetrics time_metrics(const TimeScenario& scn, const Policy& pol,
                         const JTimeWeights& w = {});

}  // namespace hdpcg
