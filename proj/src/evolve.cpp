#include "hdpcg/evolve.hpp"

#include <algorithm>

namespace hdpcg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double finite_or_zero(double v) { return std::isnan(v) ? 0.0 : v; }

int clamp_int(int v, int lo, int hi) { return std::clamp(v, lo, hi); }
double clamp_d(double v, double lo, double hi) { return std::clamp(v, lo, hi); }

}  // namespace

// ---------------------------------------------------------------------------
// Space chromosomes

SpaceChromosome sample_space_chromosome(const SpaceConfig& base, Rng& rng,
                                        int index) {
  SpaceChromosome ch{base};
  if (index == 0) return ch;  // keep the single-mode default in the population
  ch.cfg.seed = rng();
  ch.cfg.switch_count = clamp_int(base.switch_count + rand_int(rng, -2, 2), 0, 40);
  ch.cfg.room_depth = clamp_int(base.room_depth + rand_int(rng, -1, 1), 1, 3);
  return ch;
}

SpaceChromosome mutate_space_chromosome(const SpaceChromosome& ch, Rng& rng) {
  SpaceChromosome out = ch;
  auto& c = out.cfg;
  switch (c.method) {
    case SpaceMethod::NNB:
      // jitter indices (reseed), flip K by one, perturb widths
      c.seed = rng();
      if (rand_real(rng, 0, 1) < 0.5)
        c.switch_count = clamp_int(c.switch_count + rand_int(rng, -1, 1), 0, 40);
      if (rand_real(rng, 0, 1) < 0.3)
        c.corridor_depth = clamp_int(c.corridor_depth + rand_int(rng, -1, 1), 1, 2);
      if (rand_real(rng, 0, 1) < 0.3)
        c.room_depth = clamp_int(c.room_depth + rand_int(rng, -1, 1), 1, 3);
      break;
    case SpaceMethod::NpAstar:
      // coordinate jitter and radius/weight noise
      c.seed = rng();
      c.np_waypoint_jitter =
          clamp_d(c.np_waypoint_jitter + rand_real(rng, -0.05, 0.05), 0.0, 0.4);
      c.dispersion_weight =
          clamp_d(c.dispersion_weight * rand_real(rng, 0.8, 1.25), 0.25, 4.0);
      if (rand_real(rng, 0, 1) < 0.3)
        c.dispersion_radius = clamp_int(c.dispersion_radius + rand_int(rng, -1, 1), 1, 5);
      break;
    case SpaceMethod::PfAstar:
      // anchor reshuffle plus reward/radius noise
      c.seed = rng();
      c.switch_reward =
          clamp_d(c.switch_reward + rand_real(rng, -20.0, 20.0), 50.0, 400.0);
      if (rand_real(rng, 0, 1) < 0.3)
        c.attract_radius = clamp_int(c.attract_radius + rand_int(rng, -1, 1), 1, 3);
      c.anchor_oversample =
          clamp_d(c.anchor_oversample + rand_real(rng, -0.25, 0.25), 1.0, 4.0);
      break;
  }
  return out;
}

double fitness_space(const SpaceChromosome& ch) {
  auto inst = generate_space(ch.cfg);
  if (!inst) return kNegInf;
  auto m = space_metrics(*inst, ch.cfg);
  double semiperim = ch.cfg.dims.x + ch.cfg.dims.y + ch.cfg.dims.z;
  CompositeWeights w;
  return -w.len * (m.len / semiperim) + w.uniformity * finite_or_zero(m.uniformity) +
         w.dispersion * finite_or_zero(m.dispersion) +
         w.min_len * finite_or_zero(m.min_len_ok) + w.coverage * m.coverage;
}

// ---------------------------------------------------------------------------
// Time chromosomes

TimeChromosome sample_time_chromosome(const TimeConfig& base, Rng& rng,
                                      int index) {
  TimeChromosome ch;
  ch.cfg = base;
  if (index > 0) ch.cfg.seed = rng();
  for (int tries = 0;; ++tries) {
    try {
      ch.scn = instantiate_catalog(ch.cfg);
      break;
    } catch (const GenerationFailure&) {
      if (tries >= 10) throw;
      ch.cfg.seed = rng();
    }
  }
  return ch;
}

TimeChromosome mutate_time_chromosome(const TimeChromosome& ch, Rng& rng) {
  TimeChromosome out = ch;
  if (!out.scn.objects.empty() && rand_real(rng, 0, 1) < 0.7) {
    // phase-shift a small subset of objects
    int count = rand_int(rng, 1, 2);
    for (int i = 0; i < count; ++i) {
      auto& o = out.scn.objects[rand_int(
          rng, 0, static_cast<int>(out.scn.objects.size()) - 1)];
      int shift = rand_int(rng, 1, 3);
      o.phase = (o.phase + shift) % o.period;
    }
  } else {
    // resample the whole catalog
    TimeConfig c = out.cfg;
    c.seed = rng();
    try {
      out.scn = instantiate_catalog(c);
      out.cfg = c;
    } catch (const GenerationFailure&) {
      // keep the parent catalog
    }
  }
  if (out.cfg.method == TimeMethod::TegDp) {
    auto& p = out.params;
    p.c_ride = clamp_d(p.c_ride + rand_real(rng, -0.05, 0.05), 0.05, 1.0);
    p.eta_ep = clamp_d(p.eta_ep + rand_real(rng, -0.02, 0.02), 0.0, 0.5);
    p.lambda_cad = clamp_d(p.lambda_cad + rand_real(rng, -0.05, 0.05), 0.0, 2.0);
    p.lambda_uni = clamp_d(p.lambda_uni + rand_real(rng, -0.03, 0.03), 0.0, 1.0);
    p.lambda_saf = clamp_d(p.lambda_saf + rand_real(rng, -0.1, 0.1), 0.0, 4.0);
  }
  return out;
}

double fitness_time(const TimeChromosome& ch) {
  TimeScenario scn = ch.scn;
  TimeSolution sol;
  switch (ch.cfg.method) {
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
  if (!sol.feasible) return kNegInf;
  return time_metrics(scn, sol.policy).j_time;
}

}  // namespace hdpcg
