#pragma once

#include <cstdint>

#include "hardykit/certificate.hpp"
#include "hardykit/curves.hpp"
#include "hardykit/field.hpp"
#include "hardykit/maximal.hpp"

namespace hardykit {

// Pointwise p-Hardy inequality:
//   |u(x)| <= C_H d(x, Omega^c) M_{p, kappa d(x, Omega^c)} g(x)
// for Lipschitz u vanishing off Omega and upper gradients g.
struct HardyParams {
  double p = 1.0;
  double C_H = 1.0;
  double kappa = 1.0;
};

// Curve characterization: for nonnegative bounded g and x in Omega,
//   inf over Gamma^nu_{x,Omega^c} of the g-integral
//     <= C_Gamma d(x, Omega^c) M_{p, kappa d(x, Omega^c)} g(x).
struct HardyCharParams {
  double p = 1.0;
  double C_Gamma = 1.0;
  double nu = 2.0;
  double kappa = 1.0;
};

Certificate pointwise_hardy_check(const DomainSet& domain, const Field& u, const Field& g,
                                  const HardyParams& params, int x, double eps = kEpsNum);

Certificate hardy_curve_char(const DomainSet& domain, const Field& g,
                             const HardyCharParams& params, int x, double eps = kEpsNum);

// Same inequality with test functions restricted to vanish off Omega.
Certificate hardy_char_restricted(const DomainSet& domain, const Field& g,
                                  const HardyCharParams& params, int x, double eps = kEpsNum);

// Empirical characterization constant: sup over sampled gradient fields and
// all x in Omega of lhs / (d(x,Omega^c) M_{p,kappa d} g(x)), 0/0 -> 0, and
// +infinity when a positive lhs meets a zero denominator. By the converse
// direction of the characterization the same value serves as the C_H
// estimate. Deterministic given the seed; a lower bound for the true sup.
double estimate_CH(const DomainSet& domain, double p, double nu, double kappa, int trials,
                   std::uint64_t seed);

// Potential u built from h = g + M_{p, kappa d(x,Omega^c)} g(x) + delta via
// the connection infimum; u vanishes on Omega^c and u(x) >= delta d(x,Omega^c).
Field forward_test_function(const DomainSet& domain, const Field& g, int x, double kappa,
                            double p, double delta);

}  // namespace hardykit
