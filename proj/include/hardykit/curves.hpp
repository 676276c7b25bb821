#pragma once

#include <optional>
#include <vector>

#include "hardykit/field.hpp"
#include "hardykit/space.hpp"

namespace hardykit {

// A discrete curve: a sequence of pairwise-adjacent vertices with at least
// one edge. Repeated edges are allowed and count with multiplicity.
struct PathRec {
  std::vector<int> vertices;
  double length = 0.0;
};

// Validates adjacency and computes the length.
PathRec make_path(const Space& space, std::vector<int> vertices);

bool path_valid(const Space& space, const PathRec& path);

// Line integral of g along a path, trapezoid rule per edge:
// sum over traversed edges (u,v) of length(u,v) * (g(u)+g(v))/2.
double path_integral(const Space& space, const Field& g, const PathRec& path);

// Curves from `source` to the target set with length at most
// nu * d(source, targets). nu > 1 is the meaningful regime (the path metric
// has quasiconvexity constant 1); smaller values merely shrink the family.
struct CurveFamilyQuery {
  int source = -1;
  std::vector<int> targets;
  double nu = 2.0;
};

struct MinPathResult {
  PathRec path;
  double value = 0.0;  // path_integral of g along path
};

// Minimal-integral path within the length budget, exact via label setting
// over (vertex, length, integral) labels with Pareto dominance pruning.
// g must be nonnegative. Ties: smaller integral, then shorter length, then
// lexicographically smaller vertex-id sequence.
MinPathResult min_integral_path(const Space& space, const Field& g, const CurveFamilyQuery& q);

// Exhaustive enumeration of simple paths within the budget; oracle for
// min_integral_path. Guarded to spaces with at most 12 vertices.
MinPathResult brute_force_min_path(const Space& space, const Field& g,
                                   const CurveFamilyQuery& q);

// u(y) = min over unconstrained paths from y to Ω^c of the trapezoid integral
// of h; u = 0 on Ω^c. h must be nonnegative.
Field inf_connection_potential(const Space& space, const Field& h, const DomainSet& domain);

// Checks |u(a) - u(b)| <= integral of g along sigma for every simple path
// sigma, i.e. that g is an upper gradient of u under the trapezoid integral.
// Exhaustive, so only run on small spaces: returns nullopt when the space has
// more than max_vertices vertices (verification skipped, pair is trusted).
std::optional<bool> verify_upper_gradient(const Space& space, const Field& u, const Field& g,
                                          int max_vertices = 10, double eps = kEpsNum);

// Budget test shared by both search routines.
inline bool within_budget(double length, double budget, double eps = kEpsNum) {
  return length <= budget + eps;
}

}  // namespace hardykit
