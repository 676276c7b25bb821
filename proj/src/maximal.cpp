#include "hardykit/maximal.hpp"

#include <cmath>
#include <limits>

namespace hardykit {

double restricted_maximal(const Space& space, const Field& f, double p, double r, int x) {
  check_field(space, f);
  space.id_of(x);
  if (!(p >= 1.0)) throw ValidationError("maximal exponent p must be >= 1");
  if (!(r >= 0.0)) throw ValidationError("maximal radius r must be >= 0");
  if (r == 0.0) return std::abs(f[x]);
  const int n = space.vertex_count();
  const double inf = std::numeric_limits<double>::infinity();
  // For each admissible center, the candidate balls are the prefixes of the
  // distance-sorted vertex order; prefix sums give every average in O(n).
  // Since t^(1/p) is monotone, the root is taken once at the end.
  std::vector<double> num(n + 1, 0.0), den(n + 1, 0.0);
  double best = 0.0;
  for (int y = 0; y < n; ++y) {
    double dyx = space.dist(y, x);
    if (!(dyx < r)) continue;
    const auto& ord = space.distance_order(y);
    const auto& ds = space.ordered_distances(y);
    for (int j = 0; j < n; ++j) {
      int v = ord[j];
      double w = (p == 1.0) ? std::abs(f[v]) : std::pow(std::abs(f[v]), p);
      num[j + 1] = num[j] + w * space.measure(v);
      den[j + 1] = den[j] + space.measure(v);
    }
    for (int j = 1; j <= n; ++j) {
      // Cut j is realized by radii t in (ds[j-1], ds[j]); t must also lie in
      // (d(y,x), r) so that the ball contains x and stays below r.
      double lo = std::max(ds[j - 1], dyx);
      double hi = std::min(j < n ? ds[j] : inf, r);
      if (lo < hi) best = std::max(best, num[j] / den[j]);
    }
  }
  return p == 1.0 ? best : std::pow(best, 1.0 / p);
}

Certificate weak_type_check(const Space& space, const Field& f, double q, double r, double s,
                            double lambda, int x, double eps) {
  check_field(space, f);
  space.id_of(x);
  if (!(q >= 1.0)) throw ValidationError("weak-type exponent q must be >= 1");
  if (!(r > 0.0) || !(s > 0.0)) throw ValidationError("weak-type radii must be positive");
  if (!(lambda > 0.0)) throw ValidationError("weak-type level lambda must be positive");

  const int n = space.vertex_count();
  std::vector<int> level_set;
  for (int z = 0; z < n; ++z)
    if (restricted_maximal(space, f, q, s, z) > lambda) level_set.push_back(z);
  Field indicator = Field::indicator(space, level_set);

  const double D = space.doubling_constant();
  Certificate c;
  c.kind = "weak-type";
  c.eps = eps;
  c.lhs = restricted_maximal(space, indicator, 1.0, r, x);
  c.rhs = std::pow(D, 5.0) * std::pow(restricted_maximal(space, f, q, r + 3.0 * s, x), q) /
          std::pow(lambda, q);
  c.set_constant("D", D);
  c.set_constant("q", q);
  c.set_constant("r", r);
  c.set_constant("s", s);
  c.set_constant("lambda", lambda);
  c.set_constant("level_set_size", static_cast<double>(level_set.size()));
  c.certify();
  return c;
}

}  // namespace hardykit
