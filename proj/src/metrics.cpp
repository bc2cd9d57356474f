#include "hdpcg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace hdpcg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? kNaN : s / v.size();
}

double cv_of(const std::vector<double>& v) {
  if (v.size() < 2) return kNaN;
  double m = mean_of(v);
  if (m == 0) return kNaN;
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / v.size()) / m;
}

}  // namespace

double spacing_success(const std::vector<V3>& switches, int s_min) {
  if (switches.size() < 2) return kNaN;
  int pairs = 0, violations = 0;
  for (std::size_t i = 1; i < switches.size(); ++i) {
    ++pairs;
    if (l1(switches[i], switches[i - 1]) < s_min) ++violations;
  }
  return 1.0 - static_cast<double>(violations) / pairs;
}

double achieved_density(int switches, int path_len) {
  if (path_len <= 0) return kNaN;
  return 100.0 * switches / path_len;
}

double density_mae(const std::vector<std::pair<double, double>>& target_achieved) {
  double sum = 0;
  int n = 0;
  for (auto [t, a] : target_achieved) {
    if (std::isnan(a)) continue;
    sum += std::abs(a - t);
    ++n;
  }
  return n == 0 ? kNaN : sum / n;
}

SpaceMetrics space_metrics(const SpaceInstance& inst, const SpaceConfig& cfg) {
  SpaceMetrics m;
  const auto& path = inst.witness.path;
  const auto& lvl = inst.level;
  m.wall_time = inst.witness.wall_time;
  m.len = static_cast<double>(path.size()) - 1;

  // switch events along the witness, with path indices
  std::vector<V3> sw;
  std::vector<int> sw_idx;
  for (std::size_t i = 1; i < path.size(); ++i)
    if (path[i].layer != path[i - 1].layer) {
      sw.push_back(path[i].p);
      sw_idx.push_back(static_cast<int>(i));
    }
  m.rho_hat = achieved_density(static_cast<int>(sw.size()),
                               static_cast<int>(m.len));
  m.spc = spacing_success(sw, cfg.target_min_spacing);

  std::vector<double> seg;
  for (std::size_t i = 1; i < sw_idx.size(); ++i)
    seg.push_back(static_cast<double>(sw_idx[i] - sw_idx[i - 1]));
  double cv = cv_of(seg);
  m.uniformity = std::isnan(cv) ? kNaN : 1.0 - cv;
  if (seg.empty()) {
    m.min_len_ok = kNaN;
  } else {
    int ok = 0;
    for (double s : seg)
      if (s >= cfg.target_min_spacing) ++ok;
    m.min_len_ok = static_cast<double>(ok) / seg.size();
  }

  if (sw.size() < 2) {
    m.dispersion = kNaN;
  } else {
    double sum = 0;
    int pairs = 0;
    for (std::size_t i = 0; i < sw.size(); ++i)
      for (std::size_t j = i + 1; j < sw.size(); ++j) {
        sum += l1(sw[i], sw[j]);
        ++pairs;
      }
    m.dispersion = sum / pairs / (cfg.dims.x + cfg.dims.y + cfg.dims.z);
  }

  // coverage over a 4x4x4 block partition
  std::set<int> blocks;
  int bx = std::max(1, cfg.dims.x / 4), by = std::max(1, cfg.dims.y / 4),
      bz = std::max(1, cfg.dims.z / 4);
  for (const auto& s : path)
    blocks.insert((s.p.z / bz * 4 + s.p.y / by) * 4 + s.p.x / bx);
  m.coverage = static_cast<double>(blocks.size()) / 64.0;

  // dead-end rate and free-cell census
  auto idx = [&](const V3& p) {
    return (static_cast<std::size_t>(p.z) * cfg.dims.y + p.y) * cfg.dims.x + p.x;
  };
  static constexpr std::array<V3, 6> kMoves = {
      V3{-1, 0, 0}, V3{1, 0, 0}, V3{0, -1, 0},
      V3{0, 1, 0},  V3{0, 0, -1}, V3{0, 0, 1}};
  auto open = [&](const V3& p, int l) {
    return p.x >= 0 && p.y >= 0 && p.z >= 0 && p.x < cfg.dims.x &&
           p.y < cfg.dims.y && p.z < cfg.dims.z && lvl.occ[l][idx(p)] == 0;
  };
  long long free_cells = 0, dead_ends = 0;
  for (int l = 0; l < 2; ++l)
    for (int z = 0; z < cfg.dims.z; ++z)
      for (int y = 0; y < cfg.dims.y; ++y)
        for (int x = 0; x < cfg.dims.x; ++x) {
          V3 p{x, y, z};
          if (!open(p, l)) continue;
          ++free_cells;
          int nb = 0;
          for (const V3& mv : kMoves)
            if (open({p.x + mv.x, p.y + mv.y, p.z + mv.z}, l)) ++nb;
          if (nb == 1) ++dead_ends;
        }
  m.der = free_cells == 0 ? kNaN : 100.0 * dead_ends / free_cells;

  if (lvl.pockets.empty()) {
    m.sef = kNaN;
  } else {
    double total = 0;
    for (std::size_t i = 0; i < lvl.pockets.size(); ++i) {
      // landing-layer openness: average over both layers of the pocket
      for (int l = 0; l < 2; ++l) {
        int nb = 0;
        for (const V3& mv : kMoves)
          if (open({lvl.pockets[i].x + mv.x, lvl.pockets[i].y + mv.y,
                    lvl.pockets[i].z + mv.z},
                   l))
            ++nb;
        total += nb / 6.0 / 2.0;
      }
    }
    m.sef = total / lvl.pockets.size();
  }

  int span = l1(lvl.start, lvl.goal);
  m.tortuosity = span == 0 ? kNaN : m.len / span;

  double nb_sum = 0;
  for (const auto& s : path) {
    int nb = 0;
    for (const V3& mv : kMoves)
      if (open({s.p.x + mv.x, s.p.y + mv.y, s.p.z + mv.z}, s.layer)) ++nb;
    nb_sum += nb;
  }
  m.branching = path.empty() ? kNaN : nb_sum / path.size();

  long long on0 = 0, on1 = 0;
  for (const auto& s : path) (s.layer == 0 ? on0 : on1)++;
  m.layer_balance = path.empty()
                        ? kNaN
                        : static_cast<double>(std::abs(on0 - on1)) / path.size();
  return m;
}

std::vector<double> composite_scores(const std::vector<SpaceMetrics>& runs,
                                     const CompositeWeights& w) {
  std::size_t n = runs.size();
  std::vector<double> scores(n, 0.0);
  if (n < 2) return scores;  // z-scores need a spread

  struct Component {
    double weight;
    double sign;
    double SpaceMetrics::* field;
  };
  const Component comps[] = {
      {w.len, -1.0, &SpaceMetrics::len},  // shorter is better
      {w.uniformity, 1.0, &SpaceMetrics::uniformity},
      {w.dispersion, 1.0, &SpaceMetrics::dispersion},
      {w.min_len, 1.0, &SpaceMetrics::min_len_ok},
      {w.coverage, 1.0, &SpaceMetrics::coverage},
  };
  for (const auto& c : comps) {
    double sum = 0, sum2 = 0;
    int k = 0;
    for (const auto& r : runs) {
      double v = r.*(c.field);
      if (std::isnan(v)) continue;
      sum += v;
      sum2 += v * v;
      ++k;
    }
    if (k < 2) continue;
    double mean = sum / k;
    double var = sum2 / k - mean * mean;
    if (var <= 1e-12) continue;  // zero variance -> component contributes 0
    double sd = std::sqrt(var);
    for (std::size_t i = 0; i < n; ++i) {
      double v = runs[i].*(c.field);
      if (std::isnan(v)) continue;
      scores[i] += c.weight * c.sign * (v - mean) / sd;
    }
  }
  return scores;
}

double arr_estimate(const TwoLayerLevel& level, const SearchResult<LState>& witness,
                    Cost switch_cost, double eps) {
  if (witness.path.size() < 3) return kNaN;
  Cost budget = static_cast<Cost>(witness.cost * (1.0 + eps));
  auto idx = [&](const V3& p) {
    return (static_cast<std::size_t>(p.z) * level.dims.y + p.y) * level.dims.x +
           p.x;
  };
  int ok = 0, total = 0;
  for (std::size_t i = 1; i + 1 < witness.path.size(); ++i) {
    const LState& v = witness.path[i];
    if (v.p == level.start || v.p == level.goal) continue;
    TwoLayerLevel blocked = level;
    blocked.occ[v.layer][idx(v.p)] = 1;
    // a blocked pocket cell stops being a usable switch site on that layer;
    // drop it from the pocket list to keep the graph constructible
    if (blocked.occ[0][idx(v.p)] || blocked.occ[1][idx(v.p)]) {
      auto& pk = blocked.pockets;
      pk.erase(std::remove(pk.begin(), pk.end(), v.p), pk.end());
    }
    ++total;
    try {
      auto res = validate_4d(blocked, switch_cost);
      if (res.feasible && res.cost <= budget) ++ok;
    } catch (const ConstructionError&) {
      // removing the node invalidated the graph: counts as non-bypassable
    }
  }
  return total == 0 ? kNaN : static_cast<double>(ok) / total;
}

TimeMetrics time_metrics(const TimeScenario& scn, const Policy& pol,
                         const JTimeWeights& w) {
  TimeMetrics m;
  int ride_ticks = 0, wait_ticks = 0, total = 0;
  std::set<int> visited;
  std::set<int> platforms_used;
  std::vector<double> event_ticks;
  visited.insert(scn.cell(scn.start.x, scn.start.y));
  for (const auto& pr : pol) {
    total += pr.ticks;
    switch (pr.action) {
      case TegAction::Wait:
        ++wait_ticks;
        break;
      case TegAction::Walk:
        visited.insert(scn.cell(pr.to.x, pr.to.y));
        break;
      case TegAction::Ride:
        ride_ticks += pr.ticks;
        ++m.transfers;
        platforms_used.insert(pr.platform);
        event_ticks.push_back(pr.t);             // board
        event_ticks.push_back(pr.t + pr.ticks);  // alight
        visited.insert(scn.cell(pr.to.x, pr.to.y));
        break;
    }
  }
  m.ticks = total;
  m.ride_ratio = total == 0 ? 0.0 : static_cast<double>(ride_ticks) / total;
  m.wait_ratio = total == 0 ? 0.0 : static_cast<double>(wait_ticks) / total;
  m.mae_r = std::abs(m.ride_ratio - scn.target_ride_ratio);

  std::vector<double> intervals;
  for (std::size_t i = 1; i < event_ticks.size(); ++i)
    intervals.push_back(event_ticks[i] - event_ticks[i - 1]);
  if (intervals.empty()) {
    m.spacing_success = kNaN;
    m.cv_intervals = kNaN;
  } else {
    int viol = 0;
    for (double g : intervals)
      if (g < scn.target_min_spacing) ++viol;
    m.spacing_success = 1.0 - static_cast<double>(viol) / intervals.size();
    m.cv_intervals = cv_of(intervals);
  }

  // head-on swaps actually realized by the policy (legal policies: zero)
  auto obstacle_at = [&](int x, int y, int t) {
    for (std::size_t i = 0; i < scn.objects.size(); ++i) {
      if (scn.objects[i].kind != DynamicObject::Kind::Obstacle) continue;
      V2 p = scn.objects[i].position_at(t);
      if (p.x == x && p.y == y) return static_cast<int>(i);
    }
    return -1;
  };
  for (const auto& pr : pol) {
    if (pr.action != TegAction::Walk) continue;
    int ob = obstacle_at(pr.to.x, pr.to.y, pr.t);
    if (ob >= 0 && scn.objects[ob].position_at(pr.t + 1) == pr.from)
      ++m.near_swaps;
  }

  long long free_cells = 0;
  for (auto c : scn.solid)
    if (!c) ++free_cells;
  m.coverage = free_cells == 0
                   ? kNaN
                   : static_cast<double>(visited.size()) / free_cells;

  std::size_t n_platforms = scn.platform_ids().size();
  m.platform_coverage =
      n_platforms == 0 ? 0.0
                       : static_cast<double>(platforms_used.size()) / n_platforms;

  m.j_time = w.length * m.ticks + w.coverage * m.coverage +
             w.ride * m.ride_ratio + w.wait * m.wait_ratio +
             w.interaction * m.platform_coverage + w.safety * m.near_swaps;
  return m;
}

}  // namespace hdpcg
