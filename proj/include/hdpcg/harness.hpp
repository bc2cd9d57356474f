#pragma once
// Experiment orchestration: seeded sweeps over target grids, per-run records,
// aggregation, pairwise statistics, plot data, and determinism hashing.

#include <string>
#include <vector>

#include "hdpcg/evolve.hpp"
#include "hdpcg/metrics.hpp"
#include "hdpcg/robustness.hpp"
#include "hdpcg/space.hpp"
#include "hdpcg/stats.hpp"
#include "hdpcg/timedir.hpp"

namespace hdpcg {

enum class Direction { Space, Time };
enum class Scale { S, M, L };
enum class Mode { Single, GA };

const char* to_string(Direction d);
const char* to_string(Scale s);
const char* to_string(Mode m);

struct ExperimentConfig {
  Direction direction = Direction::Space;
  Scale scale = Scale::S;
  Mode mode = Mode::Single;
  std::vector<SpaceMethod> space_methods{SpaceMethod::NNB, SpaceMethod::NpAstar,
                                         SpaceMethod::PfAstar};
  std::vector<TimeMethod> time_methods{TimeMethod::StaticBackbone,
                                       TimeMethod::TegAstar, TimeMethod::TegDp};
  // Space target sweep (rho, s_min) and Time target sweep (r, d_min)
  std::vector<double> rho_targets{1.0, 3.0, 5.0};
  std::vector<int> smin_targets{3, 5, 7};
  std::vector<double> r_targets{0.30, 0.40};
  std::vector<int> dmin_targets{10, 12};
  int seeds = 80;
  // geometry per scale
  V3 space_dims{30, 30, 30};
  int time_w = 30, time_h = 15, time_t_max = 200;
  int time_platforms = 4, time_obstacles = 4;
  GAConfig ga = ga_space_defaults();
  std::string out_dir = "out";
};

// Reduced-budget preset used by CI and acceptance runs; `full_preset` mirrors
// the full-scale settings (runnable, excluded from CI).
ExperimentConfig desk_preset(Direction direction);
ExperimentConfig full_preset(Direction direction, Scale scale);

struct RunRecord {
  std::string direction, scale, method, mode;
  double target_a = 0.0;  // rho or r
  double target_b = 0.0;  // s_min or d_min
  std::uint64_t seed = 0;
  bool valid = false;
  double witness_len = 0.0;
  double witness_cost = 0.0;
  SpaceMetrics space;  // valid Space runs
  TimeMetrics time;    // valid Time runs
  double composite = 0.0;  // filled after the sweep (within-scale z-scores)
  double wall_time = 0.0;

  // Canonical serialization; wall-time fields zeroed when hash_stable.
  std::string to_json(bool hash_stable = false) const;
};

struct SweepResult {
  std::vector<RunRecord> records;  // ordered by (method, target, seed)
  int filtered = 0;                // invalid runs excluded from aggregation
  std::uint64_t determinism_hash = 0;
};

SweepResult run_sweep(const ExperimentConfig& cfg);

// Derived artifacts (bit-stable given identical records).
std::string aggregate_csv(const std::vector<RunRecord>& records);
std::string stats_csv(const std::vector<RunRecord>& records);
std::string plot_density_csv(const std::vector<RunRecord>& records);
std::uint64_t determinism_hash(const std::vector<RunRecord>& records);

// Writes records.json, aggregate.csv, stats.csv, plot_density.csv under
// cfg.out_dir; throws ConstructionError when the directory is unwritable.
void write_outputs(const ExperimentConfig& cfg, const SweepResult& result);

// Config builders shared with the CLI and tests.
SpaceConfig make_space_config(const ExperimentConfig& cfg, SpaceMethod method,
                              double rho, int s_min, std::uint64_t seed);
TimeConfig make_time_config(const ExperimentConfig& cfg, TimeMethod method,
                            double r, int d_min, std::uint64_t seed);

}  // namespace hdpcg
