#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <vector>

#include "evoapsp/graph.hpp"

namespace evoapsp {

inline constexpr std::int64_t kInfWeight = std::numeric_limits<std::int64_t>::max();

inline std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  if (a == kInfWeight || b == kInfWeight) return kInfWeight;
  return a + b;
}

// Exact all-pairs distances plus the minimum edge count among minimum-weight
// walks (undefined where dist is infinite).
struct DistMatrix {
  int n = 0;
  std::vector<std::int64_t> dist_;  // row-major n*n
  std::vector<int> hops_;

  std::int64_t dist(int u, int v) const { return dist_[static_cast<std::size_t>(u) * n + v]; }
  int hops(int u, int v) const { return hops_[static_cast<std::size_t>(u) * n + v]; }
  std::int64_t& dist(int u, int v) { return dist_[static_cast<std::size_t>(u) * n + v]; }
  int& hops(int u, int v) { return hops_[static_cast<std::size_t>(u) * n + v]; }
};

// Floyd-Warshall with lexicographic (weight, hops) relaxation, so hop counts
// come out of the same sweep.
inline DistMatrix floyd_warshall(const Graph& g) {
  DistMatrix d;
  d.n = g.n;
  d.dist_.assign(static_cast<std::size_t>(g.n) * g.n, kInfWeight);
  d.hops_.assign(static_cast<std::size_t>(g.n) * g.n, 0);
  for (int u = 0; u < g.n; ++u) d.dist(u, u) = 0;
  for (const Edge& e : g.edges) {
    d.dist(e.src, e.dst) = e.weight;
    d.hops(e.src, e.dst) = 1;
  }
  for (int k = 0; k < g.n; ++k)
    for (int u = 0; u < g.n; ++u) {
      const std::int64_t duk = d.dist(u, k);
      if (duk == kInfWeight) continue;
      for (int v = 0; v < g.n; ++v) {
        const std::int64_t cand = saturating_add(duk, d.dist(k, v));
        if (cand == kInfWeight) continue;
        const int cand_hops = d.hops(u, k) + d.hops(k, v);
        if (cand < d.dist(u, v) || (cand == d.dist(u, v) && cand_hops < d.hops(u, v))) {
          d.dist(u, v) = cand;
          d.hops(u, v) = cand_hops;
        }
      }
    }
  return d;
}

// Single-source exact distances; independent second oracle.
inline std::vector<std::int64_t> dijkstra_from(const Graph& g, int s) {
  if (s < 0 || s >= g.n) throw std::invalid_argument("dijkstra_from: source out of range");
  std::vector<std::int64_t> dist(g.n, kInfWeight);
  dist[s] = 0;
  using Item = std::pair<std::int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, s});
  while (!pq.empty()) {
    const auto [du, u] = pq.top();
    pq.pop();
    if (du != dist[u]) continue;
    for (const auto& [v, w] : g.out_adj[u]) {
      const std::int64_t nd = du + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.push({nd, v});
      }
    }
  }
  return dist;
}

// Histogram l -> number of ordered pairs whose shortest path has exactly l
// edges. Counts partition the finite-distance ordered pairs.
inline std::map<int, std::int64_t> pair_edge_classes(const DistMatrix& d) {
  std::map<int, std::int64_t> hist;
  for (int u = 0; u < d.n; ++u)
    for (int v = 0; v < d.n; ++v) {
      if (u == v || d.dist(u, v) == kInfWeight) continue;
      ++hist[d.hops(u, v)];
    }
  return hist;
}

}  // namespace evoapsp
