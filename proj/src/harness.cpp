#include "hdpcg/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace hdpcg {

const char* to_string(Direction d) {
  return d == Direction::Space ? "space" : "time";
}
const char* to_string(Scale s) {
  switch (s) {
    case Scale::S: return "S";
    case Scale::M: return "M";
    case Scale::L: return "L";
  }
  return "?";
}
const char* to_string(Mode m) { return m == Mode::Single ? "single" : "GA"; }

ExperimentConfig desk_preset(Direction direction) {
  ExperimentConfig cfg;
  cfg.direction = direction;
  cfg.scale = Scale::S;
  cfg.seeds = 12;
  if (direction == Direction::Space) {
    cfg.space_dims = {20, 20, 20};
    cfg.rho_targets = {1.0, 3.0, 5.0};
    cfg.smin_targets = {3, 5};
    cfg.ga = GAConfig{6, 6, 0.4, 3, 1, 0};
  } else {
    cfg.time_w = 15;
    cfg.time_h = 8;
    cfg.time_t_max = 60;
    cfg.time_platforms = 2;
    cfg.time_obstacles = 2;
    cfg.r_targets = {0.30};
    cfg.dmin_targets = {8};
    cfg.ga = GAConfig{8, 8, 0.3, 3, 1, 0};
  }
  return cfg;
}

ExperimentConfig full_preset(Direction direction, Scale scale) {
  ExperimentConfig cfg;
  cfg.direction = direction;
  cfg.scale = scale;
  if (direction == Direction::Space) {
    switch (scale) {
      case Scale::S: cfg.space_dims = {30, 30, 30}; cfg.seeds = 80;
        cfg.ga = GAConfig{15, 30, 0.3, 3, 1, 0}; break;
      case Scale::M: cfg.space_dims = {60, 60, 60}; cfg.seeds = 40;
        cfg.ga = GAConfig{15, 20, 0.3, 3, 1, 0}; break;
      case Scale::L: cfg.space_dims = {100, 100, 100}; cfg.seeds = 20;
        cfg.ga = GAConfig{15, 10, 0.3, 3, 1, 0}; break;
    }
  } else {
    cfg.ga = ga_time_defaults();
    switch (scale) {
      case Scale::S: cfg.time_w = 30; cfg.time_h = 15; cfg.time_t_max = 200;
        cfg.seeds = 12; break;
      case Scale::M: cfg.time_w = 50; cfg.time_h = 25; cfg.time_t_max = 400;
        cfg.seeds = 8; break;
      case Scale::L: cfg.time_w = 80; cfg.time_h = 40; cfg.time_t_max = 800;
        cfg.seeds = 4; break;
    }
  }
  return cfg;
}

SpaceConfig make_space_config(const ExperimentConfig& cfg, SpaceMethod method,
                              double rho, int s_min, std::uint64_t seed) {
  SpaceConfig sc;
  sc.dims = cfg.space_dims;
  sc.method = method;
  sc.target_density = rho;
  sc.target_min_spacing = s_min;
  sc.seed = seed;
  return sc;
}

TimeConfig make_time_config(const ExperimentConfig& cfg, TimeMethod method,
                            double r, int d_min, std::uint64_t seed) {
  TimeConfig tc;
  tc.w = cfg.time_w;
  tc.h = cfg.time_h;
  tc.t_max = cfg.time_t_max;
  tc.n_platforms = cfg.time_platforms;
  tc.n_obstacles = cfg.time_obstacles;
  tc.target_ride_ratio = r;
  tc.target_min_spacing = d_min;
  tc.cadence_extra = cfg.scale == Scale::S ? 2 : cfg.scale == Scale::M ? 3 : 4;
  tc.method = method;
  tc.seed = seed;
  return tc;
}

// ---------------------------------------------------------------------------
// record serialization

namespace {

double zero_nan(double v) { return std::isnan(v) ? 0.0 : v; }

using Clock = std::chrono::steady_clock;
double secs(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::string RunRecord::to_json(bool hash_stable) const {
  nlohmann::ordered_json j;
  j["direction"] = direction;
  j["scale"] = scale;
  j["method"] = method;
  j["mode"] = mode;
  j["target_a"] = target_a;
  j["target_b"] = target_b;
  j["seed"] = seed;
  j["valid"] = valid;
  j["witness_len"] = witness_len;
  j["witness_cost"] = witness_cost;
  j["composite"] = composite;
  j["wall_time"] = hash_stable ? 0.0 : wall_time;
  if (direction == "space") {
    nlohmann::ordered_json s;
    s["len"] = space.len;
    s["rho_hat"] = space.rho_hat;
    s["spc"] = space.spc;
    s["uniformity"] = space.uniformity;
    s["dispersion"] = space.dispersion;
    s["min_len_ok"] = space.min_len_ok;
    s["coverage"] = space.coverage;
    s["der"] = space.der;
    s["sef"] = space.sef;
    s["tortuosity"] = space.tortuosity;
    s["branching"] = space.branching;
    s["layer_balance"] = space.layer_balance;
    j["space"] = s;
  } else {
    nlohmann::ordered_json t;
    t["ride_ratio"] = time.ride_ratio;
    t["mae_r"] = time.mae_r;
    t["spacing_success"] = time.spacing_success;
    t["cv_intervals"] = time.cv_intervals;
    t["wait_ratio"] = time.wait_ratio;
    t["transfers"] = time.transfers;
    t["near_swaps"] = time.near_swaps;
    t["ticks"] = time.ticks;
    t["coverage"] = time.coverage;
    t["platform_coverage"] = time.platform_coverage;
    t["j_time"] = time.j_time;
    j["time"] = t;
  }
  return j.dump();
}

std::uint64_t determinism_hash(const std::vector<RunRecord>& records) {
  Fnv64 h;
  for (const auto& r : records) h.add(r.to_json(true));
  return h.h;
}

// ---------------------------------------------------------------------------
// sweep execution

namespace {

RunRecord base_record(const ExperimentConfig& cfg, const std::string& method,
                      double ta, double tb, std::uint64_t seed) {
  RunRecord r;
  r.direction = to_string(cfg.direction);
  r.scale = to_string(cfg.scale);
  r.method = method;
  r.mode = to_string(cfg.mode);
  r.target_a = ta;
  r.target_b = tb;
  r.seed = seed;
  return r;
}

void fill_space_record(RunRecord& rec, const SpaceInstance& inst,
                       const SpaceConfig& sc) {
  rec.valid = true;
  rec.witness_len = static_cast<double>(inst.witness.path.size()) - 1;
  rec.witness_cost = cost_to_double(inst.witness.cost);
  rec.space = space_metrics(inst, sc);
}

void run_space_cell(const ExperimentConfig& cfg, SpaceMethod method, double rho,
                    int s_min, std::uint64_t seed, std::vector<RunRecord>& out) {
  auto t0 = Clock::now();
  RunRecord rec = base_record(cfg, to_string(method), rho, s_min, seed);
  SpaceConfig sc = make_space_config(cfg, method, rho, s_min, seed);
  if (cfg.mode == Mode::Single) {
    if (auto inst = generate_space(sc)) fill_space_record(rec, *inst, sc);
  } else {
    GAConfig ga = cfg.ga;
    ga.seed = seed;
    auto res = run_ga<SpaceChromosome>(
        [&sc](Rng& rng, int i) { return sample_space_chromosome(sc, rng, i); },
        mutate_space_chromosome, fitness_space, ga);
    if (std::isfinite(res.best_fitness)) {
      if (auto inst = generate_space(res.best.cfg))
        fill_space_record(rec, *inst, res.best.cfg);
    }
  }
  rec.wall_time = secs(t0);
  out.push_back(std::move(rec));
}

void fill_time_record(RunRecord& rec, const TimeScenario& scn,
                      const TimeSolution& sol) {
  rec.valid = true;
  rec.witness_len = sol.ticks;
  rec.witness_cost = cost_to_double(sol.cost);
  rec.time = time_metrics(scn, sol.policy);
  rec.composite = rec.time.j_time;
}

void run_time_cell(const ExperimentConfig& cfg, TimeMethod method, double r,
                   int d_min, std::uint64_t seed, std::vector<RunRecord>& out) {
  auto t0 = Clock::now();
  RunRecord rec = base_record(cfg, to_string(method), r, d_min, seed);
  TimeConfig tc = make_time_config(cfg, method, r, d_min, seed);
  try {
    if (cfg.mode == Mode::Single) {
      TimeScenario scn = instantiate_catalog(tc);
      TimeSolution sol;
      switch (method) {
        case TimeMethod::StaticBackbone:
          sol = static_backbone_validate(tc, scn);
          break;
        case TimeMethod::TegAstar:
          sol = teg_astar_simplified(scn);
          break;
        case TimeMethod::TegDp:
          sol = teg_dp(scn);
          break;
      }
      if (sol.feasible) fill_time_record(rec, scn, sol);
    } else {
      GAConfig ga = cfg.ga;
      ga.seed = seed;
      auto res = run_ga<TimeChromosome>(
          [&tc](Rng& rng, int i) { return sample_time_chromosome(tc, rng, i); },
          mutate_time_chromosome, fitness_time, ga);
      if (std::isfinite(res.best_fitness)) {
        const auto& ch = res.best;
        TimeScenario scn = ch.scn;
        TimeSolution sol;
        switch (method) {
          case TimeMethod::StaticBackbone:
            sol = static_backbone_validate(ch.cfg, scn);
            break;
          case TimeMethod::TegAstar:
            sol = teg_astar_simplified(scn);
            break;
          case TimeMethod::TegDp: {
            CostField field(scn, scn.target_ride_ratio, scn.target_min_spacing,
                            scn.cadence_extra, ch.params);
            sol = teg_dp(scn, field);
            break;
          }
        }
        if (sol.feasible) fill_time_record(rec, scn, sol);
      }
    }
  } catch (const GenerationFailure&) {
    // recorded as invalid; the sweep continues
  }
  rec.wall_time = secs(t0);
  out.push_back(std::move(rec));
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
  SweepResult res;
  if (cfg.direction == Direction::Space) {
    for (SpaceMethod m : cfg.space_methods)
      for (double rho : cfg.rho_targets)
        for (int s_min : cfg.smin_targets)
          for (int seed = 0; seed < cfg.seeds; ++seed)
            run_space_cell(cfg, m, rho, s_min, seed, res.records);
    // composite scores: within-scale z over valid runs of this sweep
    std::vector<SpaceMetrics> valid;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < res.records.size(); ++i)
      if (res.records[i].valid) {
        valid.push_back(res.records[i].space);
        where.push_back(i);
      }
    auto scores = composite_scores(valid);
    for (std::size_t k = 0; k < where.size(); ++k)
      res.records[where[k]].composite = scores[k];
  } else {
    for (TimeMethod m : cfg.time_methods)
      for (double r : cfg.r_targets)
        for (int d_min : cfg.dmin_targets)
          for (int seed = 0; seed < cfg.seeds; ++seed)
            run_time_cell(cfg, m, r, d_min, seed, res.records);
  }
  for (const auto& r : res.records)
    if (!r.valid) ++res.filtered;
  res.determinism_hash = determinism_hash(res.records);
  return res;
}

// ---------------------------------------------------------------------------
// derived artifacts

std::string aggregate_csv(const std::vector<RunRecord>& records) {
  struct Agg {
    int n = 0, valid = 0;
    double len = 0, rho_hat = 0, density_err = 0, spc = 0, composite = 0;
    double ticks = 0, ride_ratio = 0, j_time = 0;
    int spc_n = 0;
  };
  std::map<std::string, Agg> groups;
  for (const auto& r : records) {
    std::ostringstream key;
    key << r.scale << ',' << r.method << ',' << r.mode << ',' << r.target_a
        << ',' << r.target_b;
    Agg& a = groups[key.str()];
    ++a.n;
    if (!r.valid) continue;
    ++a.valid;
    a.composite += r.composite;
    if (r.direction == "space") {
      a.len += r.space.len;
      a.rho_hat += zero_nan(r.space.rho_hat);
      a.density_err += std::abs(zero_nan(r.space.rho_hat) - r.target_a);
      if (!std::isnan(r.space.spc)) {
        a.spc += r.space.spc;
        ++a.spc_n;
      }
    } else {
      a.ticks += r.time.ticks;
      a.ride_ratio += r.time.ride_ratio;
      a.j_time += r.time.j_time;
    }
  }
  std::ostringstream out;
  out << "scale,method,mode,target_a,target_b,n,valid,mean_len,mean_rho_hat,"
         "density_mae,mean_spc,spacing_mae,mean_composite,mean_ticks,"
         "mean_ride_ratio,mean_j_time\n";
  for (const auto& [key, a] : groups) {
    double v = a.valid ? a.valid : 1;
    double spc_mean = a.spc_n ? a.spc / a.spc_n : 0.0;
    out << key << ',' << a.n << ',' << a.valid << ',' << a.len / v << ','
        << a.rho_hat / v << ',' << a.density_err / v << ',' << spc_mean << ','
        << (a.spc_n ? 1.0 - spc_mean : 0.0) << ',' << a.composite / v << ','
        << a.ticks / v << ',' << a.ride_ratio / v << ',' << a.j_time / v
        << '\n';
  }
  return out.str();
}

std::string stats_csv(const std::vector<RunRecord>& records) {
  // pairwise method comparisons on the composite score (J_time for Time runs)
  std::map<std::string, std::vector<double>> samples;
  std::vector<std::string> order;
  for (const auto& r : records) {
    if (!r.valid) continue;
    if (!samples.count(r.method)) order.push_back(r.method);
    samples[r.method].push_back(r.composite);
  }
  struct Row {
    std::string cmp;
    double u, p, delta;
    std::string magnitude;
  };
  std::vector<Row> rows;
  std::vector<double> pvals;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto& a = samples[order[i]];
      const auto& b = samples[order[j]];
      if (a.empty() || b.empty()) continue;
      auto mw = mann_whitney_u(a, b);
      auto cd = cliffs_delta(a, b);
      rows.push_back({order[i] + " vs " + order[j], mw.u, mw.p_two_sided,
                      cd.delta, cd.magnitude});
      pvals.push_back(mw.p_two_sided);
    }
  auto adj = holm_bonferroni(pvals);
  std::ostringstream out;
  out << "comparison,U,p,p_adj,delta,magnitude\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    out << rows[i].cmp << ',' << rows[i].u << ',' << rows[i].p << ',' << adj[i]
        << ',' << rows[i].delta << ',' << rows[i].magnitude << '\n';
  return out.str();
}

std::string plot_density_csv(const std::vector<RunRecord>& records) {
  struct Series {
    std::vector<double> achieved;
  };
  std::map<std::string, Series> groups;  // method,target
  for (const auto& r : records) {
    if (!r.valid || r.direction != "space") continue;
    if (std::isnan(r.space.rho_hat)) continue;
    std::ostringstream key;
    key << r.method << ',' << r.target_a;
    groups[key.str()].achieved.push_back(r.space.rho_hat);
  }
  std::ostringstream out;
  out << "method,x_target,y_achieved,ci_low,ci_high,n\n";
  for (const auto& [key, s] : groups) {
    double n = static_cast<double>(s.achieved.size());
    double mean = 0, var = 0;
    for (double v : s.achieved) mean += v;
    mean /= n;
    for (double v : s.achieved) var += (v - mean) * (v - mean);
    double se = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
    out << key << ',' << mean << ',' << mean - 1.96 * se << ','
        << mean + 1.96 * se << ',' << s.achieved.size() << '\n';
  }
  return out.str();
}

void write_outputs(const ExperimentConfig& cfg, const SweepResult& result) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw ConstructionError("unwritable output directory: " + cfg.out_dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream f(fs::path(cfg.out_dir) / name);
    if (!f) throw ConstructionError("unwritable output file: " + name);
    f << body;
  };
  std::ostringstream recs;
  recs << "[\n";
  for (std::size_t i = 0; i < result.records.size(); ++i)
    recs << result.records[i].to_json()
         << (i + 1 < result.records.size() ? ",\n" : "\n");
  recs << "]\n";
  write("records.json", recs.str());
  write("aggregate.csv", aggregate_csv(result.records));
  write("stats.csv", stats_csv(result.records));
  if (cfg.direction == Direction::Space)
    write("plot_density.csv", plot_density_csv(result.records));
}

}  // namespace hdpcg
