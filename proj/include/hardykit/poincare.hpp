#pragma once

#include <cstdint>

#include "hardykit/certificate.hpp"
#include "hardykit/curves.hpp"
#include "hardykit/field.hpp"
#include "hardykit/maximal.hpp"

namespace hardykit {

struct PoincareParams {
  double p = 1.0;
  double C_PI = 1.0;
  double lambda = 1.0;
};

// Constants of the two-point curve characterization: for nonnegative bounded
// g and any x, y,
//   inf over curves in Gamma^nu_{x,y} of the g-integral
//     <= C_A d(x,y) (M_{p,kd(x,y)} g(x) + M_{p,kd(x,y)} g(y)),  k = kappa.
struct CurveCharParams {
  double p = 1.0;
  double C_A = 1.0;
  double nu = 2.0;
  double kappa = 1.0;
};

// Ball form: average over B of |u - u_B| <= C_PI r (average over lambda*B of
// g^p)^{1/p}, with mu-weighted averages.
Certificate poincare_ball_check(const Space& space, const Field& u, const Field& g,
                                const PoincareParams& params, const Ball& B,
                                double eps = kEpsNum);

Certificate two_point_char(const Space& space, const Field& g, int x, int y,
                           const CurveCharParams& params, double eps = kEpsNum);

// Empirical sup of the characterization ratio lhs / (rhs without C_A) over
// sampled gradient fields and vertex pairs; 0/0 counts as 0. A positive lhs
// against a zero denominator means no finite constant works at these (nu,
// kappa) for the sampled field, and the estimate becomes +infinity.
// Deterministic given the seed; a lower bound for the true sup.
double estimate_CA(const Space& space, double p, double nu, double kappa, int trials,
                   std::uint64_t seed);

}  // namespace hardykit
