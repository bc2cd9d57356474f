#include "hdpcg/search.hpp"

#include <algorithm>

namespace hdpcg {

SearchResult<TState> dp_forward(const Teg& g, const std::vector<TState>& starts,
                                const std::function<bool(const TState&)>& goal,
                                int horizon) {
  auto t0 = detail::Clock::now();
  if (g.cyclic()) throw DomainError("dp_forward requires a truncated TEG");
  if (starts.empty()) throw DomainError("dp_forward: empty start set");
  SearchResult<TState> res;
  int w = g.width(), h = g.height();
  std::size_t cells = static_cast<std::size_t>(w) * h;
  horizon = std::min(horizon, g.horizon());

  std::vector<Cost> value(cells * (horizon + 1), kCostInf);
  std::vector<int> back(cells * (horizon + 1), -1);
  for (const TState& s : starts) {
    if (s.t != 0 || !g.contains(s)) continue;  // forbidden start
    value[g.cell(s.x, s.y)] = 0;
  }

  Cost best = kCostInf;
  int best_t = -1, best_cell = -1;
  // Goal may be reached at any tick, including t=0.
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) {
      Cost v = value[g.cell(x, y)];
      if (v < best && goal({x, y, 0})) {
        best = v;
        best_t = 0;
        best_cell = g.cell(x, y);
      }
    }

  for (int t = 0; t < horizon; ++t) {
    std::size_t off = static_cast<std::size_t>(t) * cells;
    std::size_t off1 = off + cells;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        Cost v = value[off + g.cell(x, y)];
        if (v >= kCostInf) continue;
        ++res.expanded;
        g.for_each_neighbor(TState{x, y, t}, [&](const TState& n, Cost c) {
          Cost nv = v + c;
          std::size_t ni = off1 + g.cell(n.x, n.y);
          if (nv < value[ni]) {
            value[ni] = nv;
            back[ni] = g.cell(x, y);
          }
        });
      }
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        Cost v = value[off1 + g.cell(x, y)];
        if (v < best && goal({x, y, t + 1})) {
          best = v;
          best_t = t + 1;
          best_cell = g.cell(x, y);
        }
      }
  }
  if (best_t >= 0) {
    res.feasible = true;
    res.cost = best;
    std::vector<TState> rev;
    int t = best_t, cell = best_cell;
    while (true) {
      rev.push_back({cell % w, cell / w, t});
      if (t == 0) break;
      int prev = back[static_cast<std::size_t>(t) * cells + cell];
      cell = prev;
      --t;
    }
    res.path.assign(rev.rbegin(), rev.rend());
  }
  res.wall_time = detail::seconds_since(t0);
  return res;
}

SearchResult<TState> bfs_layered(const Teg& g, const std::vector<TState>& starts,
                                 const std::function<bool(const TState&)>& goal,
                                 int horizon) {
  auto t0 = detail::Clock::now();
  if (g.cyclic()) throw DomainError("bfs_layered requires a truncated TEG");
  if (starts.empty()) throw DomainError("bfs_layered: empty start set");
  SearchResult<TState> res;
  int w = g.width(), h = g.height();
  std::size_t cells = static_cast<std::size_t>(w) * h;
  horizon = std::min(horizon, g.horizon());

  std::vector<std::uint8_t> reached(cells * (horizon + 1), 0);
  std::vector<int> back(cells * (horizon + 1), -1);
  for (const TState& s : starts) {
    if (s.t != 0 || !g.contains(s)) continue;
    reached[g.cell(s.x, s.y)] = 1;
  }
  auto finish = [&](int t, int cell) {
    res.feasible = true;
    res.cost = static_cast<Cost>(t) * kCostScale;  // ticks, scaled
    std::vector<TState> rev;
    while (true) {
      rev.push_back({cell % w, cell / w, t});
      if (t == 0) break;
      cell = back[static_cast<std::size_t>(t) * cells + cell];
      --t;
    }
    res.path.assign(rev.rbegin(), rev.rend());
  };
  for (int x = 0; x < w && !res.feasible; ++x)
    for (int y = 0; y < h; ++y)
      if (reached[g.cell(x, y)] && goal({x, y, 0})) {
        finish(0, g.cell(x, y));
        break;
      }
  for (int t = 0; t < horizon && !res.feasible; ++t) {
    std::size_t off = static_cast<std::size_t>(t) * cells;
    std::size_t off1 = off + cells;
    bool any = false;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (!reached[off + g.cell(x, y)]) continue;
        ++res.expanded;
        g.for_each_neighbor(TState{x, y, t}, [&](const TState& n, Cost) {
          std::size_t ni = off1 + g.cell(n.x, n.y);
          if (!reached[ni]) {
            reached[ni] = 1;
            back[ni] = g.cell(x, y);
            any = true;
          }
        });
      }
    if (!any) break;
    for (int y = 0; y < h && !res.feasible; ++y)
      for (int x = 0; x < w; ++x)
        if (reached[off1 + g.cell(x, y)] && goal({x, y, t + 1})) {
          finish(t + 1, g.cell(x, y));
          break;
        }
  }
  res.wall_time = detail::seconds_since(t0);
  return res;
}

}  // namespace hdpcg
