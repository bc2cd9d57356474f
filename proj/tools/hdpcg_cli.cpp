// Command-line surface: level generation, sweeps, perturbation probes,
// statistics and plot-data emission.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hdpcg/harness.hpp"

using namespace hdpcg;

namespace {

void write_or_print(const std::string& out, const std::string& body) {
  if (out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out);
  if (!f) throw ConstructionError("cannot write " + out);
  f << body;
}

SpaceMethod parse_space_method(const std::string& s) {
  if (s == "nnb") return SpaceMethod::NNB;
  if (s == "np-astar") return SpaceMethod::NpAstar;
  if (s == "pf-astar") return SpaceMethod::PfAstar;
  throw CLI::ValidationError("--method", "unknown space method: " + s);
}

TimeMethod parse_time_method(const std::string& s) {
  if (s == "static") return TimeMethod::StaticBackbone;
  if (s == "teg-astar") return TimeMethod::TegAstar;
  if (s == "teg-dp") return TimeMethod::TegDp;
  throw CLI::ValidationError("--method", "unknown time method: " + s);
}

ExperimentConfig build_config(const std::string& direction,
                              const std::string& preset,
                              const std::string& scale,
                              const std::string& mode, int seeds,
                              const std::string& out_dir) {
  Direction dir = direction == "time" ? Direction::Time : Direction::Space;
  Scale sc = scale == "M" ? Scale::M : scale == "L" ? Scale::L : Scale::S;
  ExperimentConfig cfg =
      preset == "full" ? full_preset(dir, sc) : desk_preset(dir);
  cfg.scale = sc;
  cfg.mode = mode == "GA" ? Mode::GA : Mode::Single;
  if (seeds > 0) cfg.seeds = seeds;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hdpcg: two-layer switching levels and moving-platform timing "
               "levels with exact solvers, GA refinement and experiment sweeps"};
  app.require_subcommand(1);

  std::string direction = "space", scale = "S", method, mode = "single";
  std::string out, preset = "desk";
  int seeds = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd, bool with_targets = false) {
    cmd->add_option("--direction", direction, "space | time");
    cmd->add_option("--scale", scale, "S | M | L");
    cmd->add_option("--mode", mode, "single | GA");
    cmd->add_option("--seeds", seeds, "seed count override");
    cmd->add_option("--out", out, "output path");
    cmd->add_option("--preset", preset, "desk | full");
    (void)with_targets;
  };

  // space-gen / time-gen: generate one instance and export its JSON
  auto* space_gen = app.add_subcommand("space-gen", "generate one Space level");
  std::string sg_method = "pf-astar";
  space_gen->add_option("--method", sg_method, "nnb | np-astar | pf-astar");
  space_gen->add_option("--seed", seed, "instance seed");
  space_gen->add_option("--out", out, "output file (default stdout)");
  std::vector<double> sg_targets{5.0, 5.0};
  space_gen->add_option("--targets", sg_targets,
                        "rho s_min targets (two values)");

  auto* time_gen = app.add_subcommand("time-gen", "generate one Time level");
  std::string tg_method = "teg-dp";
  time_gen->add_option("--method", tg_method, "static | teg-astar | teg-dp");
  time_gen->add_option("--seed", seed, "instance seed");
  time_gen->add_option("--out", out, "output file (default stdout)");
  std::vector<double> tg_targets{0.30, 10};
  time_gen->add_option("--targets", tg_targets, "r d_min targets (two values)");

  auto* sweep = app.add_subcommand("sweep", "run a seeded experiment sweep");
  add_common(sweep);

  auto* perturb_cmd =
      app.add_subcommand("perturb", "band/global perturbation probe");
  std::string pb_method = "pf-astar";
  double pb_p = 0.01;
  int pb_rband = 1, pb_trials = 20;
  std::string pb_protocol = "band";
  perturb_cmd->add_option("--method", pb_method, "nnb | np-astar | pf-astar");
  perturb_cmd->add_option("--seed", seed, "instance seed");
  perturb_cmd->add_option("--protocol", pb_protocol, "band | global");
  perturb_cmd->add_option("--p", pb_p, "blocking probability");
  perturb_cmd->add_option("--r-band", pb_rband, "band radius");
  perturb_cmd->add_option("--trials", pb_trials, "trials per level");

  auto* stats_cmd = app.add_subcommand("stats", "pairwise method statistics");
  add_common(stats_cmd);

  auto* export_cmd = app.add_subcommand("export", "write per-run records");
  add_common(export_cmd);

  auto* plot_cmd = app.add_subcommand("plot-data", "density plot CSV");
  add_common(plot_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (space_gen->parsed()) {
      SpaceConfig cfg;
      cfg.dims = {20, 20, 20};
      cfg.method = parse_space_method(sg_method);
      cfg.seed = seed;
      if (sg_targets.size() == 2) {
        cfg.target_density = sg_targets[0];
        cfg.target_min_spacing = static_cast<int>(sg_targets[1]);
      }
      auto inst = generate_space(cfg);
      if (!inst) {
        std::cerr << "generation failed after " << cfg.attempt_cap
                  << " attempts\n";
        return 1;
      }
      write_or_print(out, inst->level.to_json(cfg) + "\n");
    } else if (time_gen->parsed()) {
      ExperimentConfig base = desk_preset(Direction::Time);
      TimeConfig cfg = make_time_config(
          base, parse_time_method(tg_method), tg_targets[0],
          static_cast<int>(tg_targets[1]), seed);
      TimeScenario scn = instantiate_catalog(cfg);
      TimeSolution sol;
      switch (cfg.method) {
        case TimeMethod::StaticBackbone:
          sol = static_backbone_validate(cfg, scn);
          break;
        case TimeMethod::TegAstar:
          sol = teg_astar_simplified(scn);
          break;
        case TimeMethod::TegDp:
          sol = teg_dp(scn);
          break;
      }
      if (!sol.feasible) {
        std::cerr << "no feasible policy within the attempt cap\n";
        return 1;
      }
      write_or_print(out, scn.to_json(sol.policy) + "\n");
    } else if (sweep->parsed() || stats_cmd->parsed() || export_cmd->parsed() ||
               plot_cmd->parsed()) {
      ExperimentConfig cfg =
          build_config(direction, preset, scale, mode, seeds, out);
      auto res = run_sweep(cfg);
      if (sweep->parsed()) {
        write_outputs(cfg, res);
        std::cout << "records: " << res.records.size()
                  << "  filtered: " << res.filtered << "  hash: " << std::hex
                  << res.determinism_hash << std::dec << "\n";
      } else if (stats_cmd->parsed()) {
        write_or_print("", stats_csv(res.records));
      } else if (export_cmd->parsed()) {
        write_outputs(cfg, res);
        std::cout << "wrote " << res.records.size() << " records to "
                  << cfg.out_dir << "\n";
      } else {
        write_or_print("", plot_density_csv(res.records));
      }
    } else if (perturb_cmd->parsed()) {
      SpaceConfig cfg;
      cfg.dims = {20, 20, 20};
      cfg.method = parse_space_method(pb_method);
      cfg.seed = seed;
      auto inst = generate_space(cfg);
      if (!inst) {
        std::cerr << "generation failed\n";
        return 1;
      }
      PerturbSpec spec;
      spec.protocol = pb_protocol == "global" ? PerturbSpec::Protocol::Global
                                              : PerturbSpec::Protocol::Band;
      spec.p = pb_p;
      spec.r_band = pb_rband;
      spec.trials = pb_trials;
      spec.seed = seed;
      auto probe = replan_probe(inst->level, inst->witness, spec, cfg.switch_cost);
      std::cout << "protocol,p,r_band,trials,success_rate,mean_delta_cost\n"
                << pb_protocol << ',' << pb_p << ',' << pb_rband << ','
                << pb_trials << ',' << probe.success_rate << ','
                << probe.mean_delta_cost << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
