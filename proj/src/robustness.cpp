#include "hdpcg/robustness.hpp"

#include <cmath>
#include <limits>

namespace hdpcg {

namespace {

std::vector<std::uint8_t> band_mask(const TwoLayerLevel& lvl,
                                    const std::vector<LState>& witness,
                                    int layer, int r) {
  std::size_t cells =
      static_cast<std::size_t>(lvl.dims.x) * lvl.dims.y * lvl.dims.z;
  std::vector<std::uint8_t> mask(cells, 0);
  auto idx = [&](const V3& p) {
    return (static_cast<std::size_t>(p.z) * lvl.dims.y + p.y) * lvl.dims.x + p.x;
  };
  for (const auto& s : witness) {
    if (s.layer != layer) continue;
    for (int dz = -r; dz <= r; ++dz)
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          if (std::abs(dx) + std::abs(dy) + std::abs(dz) > r) continue;
          V3 q{s.p.x + dx, s.p.y + dy, s.p.z + dz};
          if (q.x < 0 || q.y < 0 || q.z < 0 || q.x >= lvl.dims.x ||
              q.y >= lvl.dims.y || q.z >= lvl.dims.z)
            continue;
          mask[idx(q)] = 1;
        }
  }
  return mask;
}

}  // namespace

TwoLayerLevel perturb(const TwoLayerLevel& level,
                      const std::vector<LState>& witness,
                      const PerturbSpec& spec, int trial) {
  if (!(spec.p > 0.0 && spec.p < 1.0))
    throw DomainError("perturb: p must lie in (0,1)");
  TwoLayerLevel out = level;
  Rng rng(spec.seed * 1000003ULL + trial);
  auto idx = [&](const V3& p) {
    return (static_cast<std::size_t>(p.z) * level.dims.y + p.y) * level.dims.x +
           p.x;
  };
  std::size_t cells =
      static_cast<std::size_t>(level.dims.x) * level.dims.y * level.dims.z;
  std::vector<std::uint8_t> protect(cells, 0);
  protect[idx(level.start)] = 1;
  protect[idx(level.goal)] = 1;
  for (const V3& q : level.pockets) protect[idx(q)] = 1;

  for (int layer = 0; layer < 2; ++layer) {
    std::vector<std::uint8_t> band;
    if (spec.protocol == PerturbSpec::Protocol::Band)
      band = band_mask(level, witness, layer, spec.r_band);
    for (std::size_t c = 0; c < cells; ++c) {
      if (level.occ[layer][c] != 0 || protect[c]) continue;
      if (spec.protocol == PerturbSpec::Protocol::Band && !band[c]) continue;
      if (rand_real(rng, 0.0, 1.0) < spec.p) out.occ[layer][c] = 1;
    }
  }
  return out;
}

ProbeResult replan_probe(const TwoLayerLevel& level,
                         const SearchResult<LState>& witness,
                         const PerturbSpec& spec, Cost switch_cost) {
  if (spec.trials < 1) throw DomainError("replan_probe: trials must be >= 1");
  ProbeResult res;
  res.trials = spec.trials;
  int successes = 0;
  double delta_sum = 0.0;
  for (int trial = 0; trial < spec.trials; ++trial) {
    auto perturbed = perturb(level, witness.path, spec, trial);
    auto replanned = validate_4d(perturbed, switch_cost);
    if (!replanned.feasible) continue;
    ++successes;
    delta_sum += cost_to_double(replanned.cost - witness.cost);
  }
  res.success_rate = static_cast<double>(successes) / spec.trials;
  res.mean_delta_cost = successes
                            ? delta_sum / successes
                            : std::numeric_limits<double>::quiet_NaN();
  return res;
}

double endpoint_probe(const TwoLayerLevel& level, int pairs, int floor,
                      Cost switch_cost, std::uint64_t seed) {
  if (pairs < 1) throw DomainError("endpoint_probe: pairs must be >= 1");
  Rng rng(seed * 7778777ULL + 13);
  auto idx = [&](const V3& p) {
    return (static_cast<std::size_t>(p.z) * level.dims.y + p.y) * level.dims.x +
           p.x;
  };
  auto sample_free = [&]() -> std::pair<V3, int> {
    for (int i = 0; i < 200; ++i) {
      V3 p{rand_int(rng, 0, level.dims.x - 1), rand_int(rng, 0, level.dims.y - 1),
           rand_int(rng, 0, level.dims.z - 1)};
      for (int l = 0; l < 2; ++l)
        if (level.occ[l][idx(p)] == 0) return {p, l};
    }
    return {{-1, -1, -1}, -1};
  };
  int sampled = 0, successes = 0;
  for (int k = 0; k < pairs; ++k) {
    bool found = false;
    for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
      auto [a, la] = sample_free();
      auto [b, lb] = sample_free();
      if (la < 0 || lb < 0 || l1(a, b) < floor) continue;
      found = true;
      ++sampled;
      TwoLayerLevel probe = level;
      probe.start = a;
      probe.goal = b;
      probe.start_layer = la;
      probe.goal_layer = lb;
      if (validate_4d(probe, switch_cost).feasible) ++successes;
    }
  }
  if (sampled == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(successes) / sampled;
}

}  // namespace hdpcg
