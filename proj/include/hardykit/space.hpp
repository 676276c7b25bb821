#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hardykit/common.hpp"

namespace hardykit {

// Open metric ball B(center, radius) = { v : d(center, v) < radius }.
// `members` is ascending by vertex index and always contains the center.
struct Ball {
  int center = -1;
  double radius = 0.0;
  std::vector<int> members;
  double measure = 0.0;
};

struct SpaceEdge {
  int u = -1;
  int v = -1;
  double length = 0.0;
};

// Finite metric measure space: a connected weighted graph with strictly
// positive vertex measures and strictly positive edge lengths, equipped with
// the induced shortest-path metric. Immutable after construction; all queries
// are const and safe for concurrent use.
class Space {
 public:
  // Parses the space file format:
  //   { "vertices": [{"id": str, "measure": num}...],
  //     "edges":    [{"u": str, "v": str, "length": num}...] }
  // Throws ParseError on malformed text, ValidationError on invariant
  // violations (duplicate ids/edges, nonpositive measure/length, < 2
  // vertices, disconnected graph).
  static Space from_json_text(const std::string& text);

  static Space from_parts(std::vector<std::string> ids, std::vector<double> measures,
                          std::vector<SpaceEdge> edges);

  int vertex_count() const { return static_cast<int>(ids_.size()); }
  const std::string& id_of(int v) const;
  int index_of(const std::string& id) const;  // throws ValidationError if unknown
  double measure(int v) const;
  double total_measure() const { return total_measure_; }
  const std::vector<SpaceEdge>& edges() const { return edges_; }

  // Neighbors sorted ascending by vertex index, with edge lengths.
  const std::vector<std::pair<int, double>>& neighbors(int v) const;
  bool adjacent(int u, int v) const;
  double edge_length(int u, int v) const;  // throws if u, v not adjacent

  // Shortest-path distance; precomputed all-pairs table.
  double dist(int x, int y) const;
  double diameter() const { return diameter_; }

  // μ(B(center, radius)); O(log n) via per-center prefix sums.
  double ball_measure(int center, double radius) const;

  // Vertices sorted by (distance from center, index) and the matching sorted
  // distances; the first j entries of the order are exactly the members of
  // any ball B(center, t) with t in (dist[j-1], dist[j]].
  const std::vector<int>& distance_order(int center) const;
  const std::vector<double>& ordered_distances(int center) const;

  Ball ball(int center, double radius) const;  // radius must be > 0

  // One representative Ball per distinct member-set among balls B(y, t) with
  // x ∈ B and 0 < t < max_radius. Representative radii are midpoints of
  // consecutive critical distances {d(y, v)} clipped to the admissible
  // interval (d(y, x), max_radius). Deterministic order: centers ascending,
  // radii ascending, first occurrence kept.
  std::vector<Ball> distinct_balls_containing(int x, double max_radius) const;

  // Least D with μ(B(x,2r)) <= D μ(B(x,r)) over the critical radius set
  // (all pairwise distances and their halves plus interval midpoints), which
  // certifies the inequality for every positive radius since r ↦ members is
  // piecewise constant. Computed once at construction.
  double doubling_constant() const { return doubling_; }

  std::string to_json_text() const;

 private:
  Space() = default;
  void build();
  void check_vertex(int v) const;

  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<double> measure_;
  std::vector<SpaceEdge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  std::unordered_map<long long, double> edge_len_;
  std::vector<std::vector<double>> dist_;
  // Per-center vertex order sorted by (distance, index), the matching sorted
  // distances, and measure prefix sums over that order.
  std::vector<std::vector<int>> order_;
  std::vector<std::vector<double>> odist_;
  std::vector<std::vector<double>> oprefix_;
  double total_measure_ = 0.0;
  double diameter_ = 0.0;
  double doubling_ = 1.0;
};

// Open set Ω as a vertex subset with nonempty complement.
class DomainSet {
 public:
  DomainSet(const Space& space, std::vector<int> omega);

  // Omega file format: { "omega": [vertexId, ...] }.
  static DomainSet from_json_text(const Space& space, const std::string& text);

  const Space& space() const { return *space_; }
  bool in_omega(int v) const;
  const std::vector<int>& omega() const { return omega_; }
  const std::vector<int>& complement() const { return complement_; }

  // d(x, Ω^c); x must lie in Ω.
  double dist_to_complement(int x) const;

 private:
  const Space* space_;
  std::vector<char> in_omega_;
  std::vector<int> omega_;
  std::vector<int> complement_;
  std::vector<double> dist_to_comp_;
};

}  // namespace hardykit
