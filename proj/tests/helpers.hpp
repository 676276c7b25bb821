#pragma once

#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "hardykit/curves.hpp"
#include "hardykit/field.hpp"
#include "hardykit/space.hpp"

namespace testutil {

inline hardykit::Space make_space(std::vector<std::string> ids, std::vector<double> measures,
                                  std::vector<std::tuple<int, int, double>> edges) {
  std::vector<hardykit::SpaceEdge> es;
  for (auto [u, v, len] : edges) es.push_back({u, v, len});
  return hardykit::Space::from_parts(std::move(ids), std::move(measures), std::move(es));
}

// a - b - c with unit edges and unit measures.
inline hardykit::Space path_abc() {
  return make_space({"a", "b", "c"}, {1, 1, 1}, {{0, 1, 1.0}, {1, 2, 1.0}});
}

// Independent distance oracle: exhaustive minimum over simple paths.
inline double brute_dist(const hardykit::Space& s, int x, int y) {
  const int n = s.vertex_count();
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> visited(n, 0);
  visited[x] = 1;
  auto dfs = [&](auto&& self, int v, double len) -> void {
    if (v == y) {
      best = std::min(best, len);
      return;
    }
    for (auto [w, elen] : s.neighbors(v)) {
      if (visited[w]) continue;
      visited[w] = 1;
      self(self, w, len + elen);
      visited[w] = 0;
    }
  };
  if (x == y) return 0.0;
  dfs(dfs, x, 0.0);
  return best;
}

// Independent distance oracle for larger spaces: Bellman-Ford relaxation.
inline std::vector<double> bellman_ford(const hardykit::Space& s, int source) {
  const int n = s.vertex_count();
  std::vector<double> d(n, std::numeric_limits<double>::infinity());
  d[source] = 0.0;
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (const auto& e : s.edges()) {
      if (d[e.u] + e.length < d[e.v]) {
        d[e.v] = d[e.u] + e.length;
        changed = true;
      }
      if (d[e.v] + e.length < d[e.u]) {
        d[e.u] = d[e.v] + e.length;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

}  // namespace testutil
