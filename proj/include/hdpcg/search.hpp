#pragma once
// Exact solvers on expanded graphs: best-first A*, a Dijkstra oracle kept
// implementation-independent from A* for testing, plus layered BFS and
// forward min-cost DP specialized to truncated TEGs.

#include <chrono>
#include <functional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "hdpcg/deg.hpp"

namespace hdpcg {

template <class State>
struct SearchResult {
  bool feasible = false;
  std::vector<State> path;
  Cost cost = 0;
  long long expanded = 0;
  double wall_time = 0.0;
};

namespace detail {
struct PqEntry {
  Cost f;
  Cost h;
  std::uint64_t key;
  // min-heap on (f, h, key)
  friend bool operator<(const PqEntry& a, const PqEntry& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.key > b.key;
  }
};
using Clock = std::chrono::steady_clock;
inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}
}  // namespace detail

// A* with tie-breaking (f, h, deterministic state key). Single-close by
// default; `reopen` re-expands states when a cheaper g is found (used only by
// callers that pass inconsistent cost shaping).
template <class G>
SearchResult<typename G::State> astar(
    const G& g, const std::vector<typename G::State>& starts,
    const std::function<bool(const typename G::State&)>& goal,
    const std::function<Cost(const typename G::State&)>& h,
    bool reopen = false) {
  using State = typename G::State;
  auto t0 = detail::Clock::now();
  if (starts.empty()) throw DomainError("astar: empty start set");
  SearchResult<State> res;

  std::unordered_map<std::uint64_t, Cost> best_g;
  std::unordered_map<std::uint64_t, std::uint64_t> parent;
  std::unordered_map<std::uint64_t, State> state_of;
  std::unordered_map<std::uint64_t, bool> closed;
  std::priority_queue<detail::PqEntry> open;

  for (const State& s : starts) {
    std::uint64_t k = g.key(s);
    Cost hs = h(s);
    best_g[k] = 0;
    state_of[k] = s;
    open.push({hs, hs, k});
  }
  while (!open.empty()) {
    auto top = open.top();
    open.pop();
    auto it = best_g.find(top.key);
    Cost gv = it->second;
    if (top.f != gv + top.h) continue;  // stale entry
    if (closed[top.key] && !reopen) continue;
    closed[top.key] = true;
    State s = state_of[top.key];
    ++res.expanded;
    if (goal(s)) {
      res.feasible = true;
      res.cost = gv;
      std::uint64_t k = top.key;
      std::vector<State> rev{s};
      while (parent.count(k)) {
        k = parent[k];
        rev.push_back(state_of[k]);
      }
      res.path.assign(rev.rbegin(), rev.rend());
      break;
    }
    g.for_each_neighbor(s, [&](const State& n, Cost c) {
      std::uint64_t nk = g.key(n);
      Cost ng = gv + c;
      auto f = best_g.find(nk);
      if (f != best_g.end() && f->second <= ng) return;
      if (!reopen && closed.count(nk) && closed[nk]) return;
      best_g[nk] = ng;
      parent[nk] = top.key;
      state_of[nk] = n;
      if (reopen) closed[nk] = false;
      Cost nh = h(n);
      open.push({ng + nh, nh, nk});
    });
  }
  res.wall_time = detail::seconds_since(t0);
  return res;
}

// Exact min-cost oracle; intentionally a separate, simpler code path from A*.
template <class G>
SearchResult<typename G::State> dijkstra_oracle(
    const G& g, const std::vector<typename G::State>& starts,
    const std::function<bool(const typename G::State&)>& goal) {
  using State = typename G::State;
  auto t0 = detail::Clock::now();
  if (starts.empty()) throw DomainError("dijkstra: empty start set");
  SearchResult<State> res;

  std::unordered_map<std::uint64_t, Cost> dist;
  std::unordered_map<std::uint64_t, std::uint64_t> parent;
  std::unordered_map<std::uint64_t, State> state_of;
  using Entry = std::pair<Cost, std::uint64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  for (const State& s : starts) {
    dist[g.key(s)] = 0;
    state_of[g.key(s)] = s;
    pq.push({0, g.key(s)});
  }
  while (!pq.empty()) {
    auto [d, k] = pq.top();
    pq.pop();
    if (d != dist[k]) continue;
    State s = state_of[k];
    ++res.expanded;
    if (goal(s)) {
      res.feasible = true;
      res.cost = d;
      std::vector<State> rev{s};
      std::uint64_t cur = k;
      while (parent.count(cur)) {
        cur = parent[cur];
        rev.push_back(state_of[cur]);
      }
      res.path.assign(rev.rbegin(), rev.rend());
      break;
    }
    g.for_each_neighbor(s, [&](const State& n, Cost c) {
      std::uint64_t nk = g.key(n);
      Cost nd = d + c;
      auto it = dist.find(nk);
      if (it != dist.end() && it->second <= nd) return;
      dist[nk] = nd;
      parent[nk] = k;
      state_of[nk] = n;
      pq.push({nd, nk});
    });
  }
  res.wall_time = detail::seconds_since(t0);
  return res;
}

// Forward min-cost DP over a truncated layered TEG; returns the globally
// minimum-cost path to any goal state reached at any tick <= horizon.
SearchResult<TState> dp_forward(const Teg& g, const std::vector<TState>& starts,
                                const std::function<bool(const TState&)>& goal,
                                int horizon);

// Layered BFS: minimum-tick path with implicit unit costs.
SearchResult<TState> bfs_layered(const Teg& g, const std::vector<TState>& starts,
                                 const std::function<bool(const TState&)>& goal,
                                 int horizon);

// Replays a path edge-by-edge through the graph's neighbor enumeration,
// checking that each hop is an enumerated edge; returns the summed cost.
template <class G>
Cost replay_path_cost(const G& g, const std::vector<typename G::State>& path) {
  Cost total = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    bool found = false;
    Cost ec = 0;
    g.for_each_neighbor(path[i], [&](const typename G::State& n, Cost c) {
      if (!found && g.key(n) == g.key(path[i + 1])) {
        found = true;
        ec = c;
      }
    });
    if (!found) throw DomainError("replay: non-edge hop in path");
    total += ec;
  }
  return total;
}

}  // namespace hdpcg
