#pragma once

#include "hardykit/certificate.hpp"
#include "hardykit/field.hpp"
#include "hardykit/space.hpp"

namespace hardykit {

// r-restricted maximal function M_{p,r} f(x): |f(x)| when r = 0, else the
// supremum of (average of |f|^p over B)^{1/p} over all balls B = B(y,t) with
// x in B and 0 < t < r. The supremum is exact: it is a maximum over the
// finitely many distinct member-sets.
double restricted_maximal(const Space& space, const Field& f, double p, double r, int x);

struct MaximalQuery {
  double p = 1.0;
  double r = 0.0;
  int x = -1;
};

inline double restricted_maximal(const Space& space, const Field& f, const MaximalQuery& q) {
  return restricted_maximal(space, f, q.p, q.r, q.x);
}

// Scale-invariant weak-type estimate: with E = { z : M_{q,s} f(z) > lambda },
//   M_{1,r} 1_E(x) <= D^5 (M_{q,r+3s} f(x))^q / lambda^q.
// D is the computed doubling constant of the space.
Certificate weak_type_check(const Space& space, const Field& f, double q, double r, double s,
                            double lambda, int x, double eps = kEpsNum);

}  // namespace hardykit
