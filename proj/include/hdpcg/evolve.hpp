#pragma once
// Genetic refinement over generator parameters: tournament selection,
// mutation-only variation, single-slot elitism, and per-generation traces.
// Fitness is higher-is-better; invalid individuals carry -infinity.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "hdpcg/metrics.hpp"
#include "hdpcg/space.hpp"
#include "hdpcg/timedir.hpp"

namespace hdpcg {

struct GAConfig {
  int population = 15;
  int generations = 30;
  double mutation_rate = 0.3;
  int tournament = 3;
  int elitism = 1;
  std::uint64_t seed = 0;
};

inline GAConfig ga_space_defaults() { return {15, 30, 0.3, 3, 1, 0}; }
inline GAConfig ga_time_defaults() { return {20, 20, 0.2, 3, 1, 0}; }

struct GaTracePoint {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;   // over finite fitnesses
  double stddev = 0.0;
};

template <class Chrom>
struct GaResult {
  Chrom best;
  double best_fitness = -std::numeric_limits<double>::infinity();
  std::vector<GaTracePoint> trace;  // generations + 1 points
};

// sample(rng, index) builds the initial population (index 0 may seed a known
// default); mutate(parent, rng) returns a valid chromosome; eval(ch) may
// return -infinity for invalid instances.
template <class Chrom>
GaResult<Chrom> run_ga(
    const std::function<Chrom(Rng&, int)>& sample,
    const std::function<Chrom(const Chrom&, Rng&)>& mutate,
    const std::function<double(const Chrom&)>& eval, const GAConfig& cfg) {
  if (cfg.population < 1 || cfg.tournament < 1)
    throw DomainError("run_ga: bad population/tournament size");
  Rng rng(cfg.seed * 6364136223846793005ULL + 1442695040888963407ULL);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  std::vector<Chrom> pop;
  std::vector<double> fit;
  pop.reserve(cfg.population);
  for (int i = 0; i < cfg.population; ++i) pop.push_back(sample(rng, i));
  for (const Chrom& c : pop) fit.push_back(eval(c));

  GaResult<Chrom> res;
  auto record = [&](int gen) {
    GaTracePoint pt;
    pt.generation = gen;
    pt.best = kNegInf;
    double sum = 0, sum2 = 0;
    int n = 0;
    for (double f : fit) {
      if (f > pt.best) pt.best = f;
      if (std::isfinite(f)) {
        sum += f;
        sum2 += f * f;
        ++n;
      }
    }
    pt.mean = n ? sum / n : kNegInf;
    pt.stddev = n ? std::sqrt(std::max(0.0, sum2 / n - pt.mean * pt.mean)) : 0.0;
    res.trace.push_back(pt);
  };
  auto best_index = [&]() {
    int b = 0;
    for (int i = 1; i < cfg.population; ++i)
      if (fit[i] > fit[b]) b = i;
    return b;
  };
  record(0);

  for (int gen = 1; gen <= cfg.generations; ++gen) {
    std::vector<Chrom> next;
    std::vector<double> next_fit;
    // elitism: carry the top individuals (with their cached fitness)
    std::vector<int> order(cfg.population);
    for (int i = 0; i < cfg.population; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fit[a] > fit[b]; });
    for (int e = 0; e < cfg.elitism && e < cfg.population; ++e) {
      next.push_back(pop[order[e]]);
      next_fit.push_back(fit[order[e]]);
    }
    while (static_cast<int>(next.size()) < cfg.population) {
      int winner = rand_int(rng, 0, cfg.population - 1);
      for (int k = 1; k < cfg.tournament; ++k) {
        int challenger = rand_int(rng, 0, cfg.population - 1);
        if (fit[challenger] > fit[winner]) winner = challenger;
      }
      if (rand_real(rng, 0, 1) < cfg.mutation_rate) {
        Chrom child = mutate(pop[winner], rng);
        next.push_back(child);
        next_fit.push_back(eval(child));
      } else {
        next.push_back(pop[winner]);
        next_fit.push_back(fit[winner]);
      }
    }
    pop = std::move(next);
    fit = std::move(next_fit);
    record(gen);
  }
  int b = best_index();
  res.best = pop[b];
  res.best_fitness = fit[b];
  return res;
}

// ---------------------------------------------------------------------------
// Method-specific chromosomes

struct SpaceChromosome {
  SpaceConfig cfg;
};

SpaceChromosome sample_space_chromosome(const SpaceConfig& base, Rng& rng, int index);
SpaceChromosome mutate_space_chromosome(const SpaceChromosome& ch, Rng& rng);
// Generates, grounds, validates; raw weighted component sum, or -infinity.
double fitness_space(const SpaceChromosome& ch);

struct TimeChromosome {
  TimeConfig cfg;
  TimeScenario scn;  // instantiated catalog (mutation shifts phases in place)
  CostFieldParams params;
};

TimeChromosome sample_time_chromosome(const TimeConfig& base, Rng& rng, int index);
TimeChromosome mutate_time_chromosome(const TimeChromosome& ch, Rng& rng);
// Solves via cfg.method; J_time of the validated policy, or -infinity.
double fitness_time(const TimeChromosome& ch);

}  // namespace hdpcg
