#include "hardykit/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hardykit {

namespace {

double clip01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

Field sample_gradient_field(const Space& space, SplitMix64& rng, int anchor) {
  const int n = space.vertex_count();
  const double diam = space.diameter();
  Field g = Field::zeros(space);
  const std::uint64_t family = rng.next_below(5);
  const double amp = 0.25 + 0.75 * rng.next_double();
  switch (family) {
    case 0: {  // annulus indicator around the anchor
      double r1 = rng.next_in(0.0, diam);
      double r2 = rng.next_in(0.0, diam);
      if (r2 < r1) std::swap(r1, r2);
      for (int v = 0; v < n; ++v) {
        double d = space.dist(anchor, v);
        g[v] = (d >= r1 && d < r2 + 1e-12) ? amp : 0.0;
      }
      break;
    }
    case 1: {  // complement of a corridor between two random vertices
      int a = static_cast<int>(rng.next_below(n));
      int b = static_cast<int>(rng.next_below(n));
      double slack = rng.next_in(0.0, 0.5) * std::max(space.dist(a, b), 1e-12);
      for (int v = 0; v < n; ++v) {
        bool in_corridor = space.dist(a, v) + space.dist(v, b) <= space.dist(a, b) + slack;
        g[v] = in_corridor ? 0.0 : amp;
      }
      break;
    }
    case 2: {  // distance-profile bump
      double c = rng.next_in(0.0, diam);
      double w = rng.next_in(0.05 * diam + 1e-12, diam);
      for (int v = 0; v < n; ++v)
        g[v] = clip01(amp * (1.0 - std::abs(space.dist(anchor, v) - c) / w));
      break;
    }
    case 3: {  // uniform noise, sparsified
      double keep = 0.3 + 0.7 * rng.next_double();
      for (int v = 0; v < n; ++v)
        g[v] = (rng.next_double() < keep) ? amp * rng.next_double() : 0.0;
      break;
    }
    default: {  // annulus blended with noise
      double r1 = rng.next_in(0.0, diam);
      double r2 = rng.next_in(r1, diam);
      for (int v = 0; v < n; ++v) {
        double d = space.dist(anchor, v);
        double base = (d >= r1 && d < r2 + 1e-12) ? amp : 0.0;
        g[v] = clip01(std::max(base, 0.5 * rng.next_double()));
      }
      break;
    }
  }
  return g;
}

Space sample_connected_space(SplitMix64& rng, int n, double len_lo, double len_hi, double mu_lo,
                             double mu_hi) {
  if (n < 2) throw ValidationError("sample_connected_space needs n >= 2");
  std::vector<std::string> ids(n);
  std::vector<double> measures(n);
  for (int v = 0; v < n; ++v) {
    ids[v] = "v" + std::to_string(v);
    measures[v] = rng.next_in(mu_lo, mu_hi);
  }
  std::vector<SpaceEdge> edges;
  std::vector<std::vector<char>> have(n, std::vector<char>(n, 0));
  // Random spanning tree: attach each vertex to a random earlier one.
  for (int v = 1; v < n; ++v) {
    int u = static_cast<int>(rng.next_below(v));
    edges.push_back({u, v, rng.next_in(len_lo, len_hi)});
    have[u][v] = have[v][u] = 1;
  }
  // A few extra edges to create cycles and detours.
  int extra = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
  for (int e = 0; e < extra; ++e) {
    int u = static_cast<int>(rng.next_below(n));
    int v = static_cast<int>(rng.next_below(n));
    if (u == v || have[u][v]) continue;
    edges.push_back({u, v, rng.next_in(len_lo, len_hi)});
    have[u][v] = have[v][u] = 1;
  }
  return Space::from_parts(std::move(ids), std::move(measures), std::move(edges));
}

Field sample_signed_field(const Space& space, SplitMix64& rng, double amp) {
  Field f = Field::zeros(space);
  for (int v = 0; v < space.vertex_count(); ++v) f[v] = rng.next_in(-amp, amp);
  return f;
}

}  // namespace hardykit
