#pragma once
// Perturbation protocols and replanning probes: band/global voxel blocking
// around validated levels, replan success + cost-delta measurement, and
// endpoint-shift probes.

#include "hdpcg/space.hpp"

namespace hdpcg {

struct PerturbSpec {
  enum class Protocol { Band, Global };
  Protocol protocol = Protocol::Band;
  int r_band = 1;
  double p = 0.01;  // blocking probability, in (0,1)
  int trials = 20;
  std::uint64_t seed = 0;
};

// Blocks open voxels (band: within L1 r_band of a same-layer witness node;
// global: anywhere) with probability p. Start, goal, and switch pockets are
// never blocked. Deterministic per (spec.seed, trial).
TwoLayerLevel perturb(const TwoLayerLevel& level,
                      const std::vector<LState>& witness,
                      const PerturbSpec& spec, int trial);

struct ProbeResult {
  double success_rate = 0.0;
  double mean_delta_cost = 0.0;  // over successful trials; NaN without any
  int trials = 0;
};

// Re-validates the perturbed level per trial; success = still feasible,
// delta = perturbed cost - nominal cost.
ProbeResult replan_probe(const TwoLayerLevel& level,
                         const SearchResult<LState>& witness,
                         const PerturbSpec& spec, Cost switch_cost);

// Samples new start/goal pairs (free cells, L1 >= floor, <= 1000 attempts
// per pair) and replans; returns the success fraction, NaN when sampling
// fails entirely.
double endpoint_probe(const TwoLayerLevel& level, int pairs, int floor,
                      Cost switch_cost, std::uint64_t seed);

}  // namespace hdpcg
