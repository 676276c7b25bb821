#pragma once

#include <optional>
#include <vector>

#include "hardykit/certificate.hpp"
#include "hardykit/curves.hpp"
#include "hardykit/field.hpp"

namespace hardykit {

// Query for alpha_{p,Omega}(nu, kappa, tau): the sup over x in Omega (or the
// single given x) and over gradient candidates g in [0,1]^V with
// M_{p, kappa d(x,Omega^c)} g(x) <= tau, of the minimal g-integral over
// curves in Gamma^nu_{x,Omega^c} divided by d(x,Omega^c).
struct AlphaQuery {
  double nu = 2.0;
  double kappa = 1.0;
  double tau = 0.0;
  double p = 1.0;
  std::optional<int> x;  // absent: sup over all of Omega
};

// `value` is a certified lower bound: the witness is re-verified feasible via
// restricted_maximal and `value` equals its minimal curve integral divided by
// d(x,Omega^c). `gap` is the distance to the final inner (cutting-plane)
// optimum, a best-effort upper estimate.
struct AlphaEstimate {
  double value = 0.0;
  Field witness_g;
  int witness_x = -1;
  std::vector<PathRec> active_paths;
  bool converged = false;
  double gap = 0.0;
};

struct AlphaOptions {
  double tol = 1e-4;  // relative convergence tolerance of the outer loop
  int max_rounds = 100;
  int inner_iterations = 500;  // projected supergradient ascent steps
  int projection_sweeps = 50;  // cyclic constraint projection sweeps
  int threads = 1;             // per-x optimizations are independent
};

// Cutting-plane maximin: alternate between maximizing the minimum integral
// over the active path set (concave in w = g^p over a box-and-halfspace
// feasible region, solved by projected supergradient ascent) and separating
// with an exact minimal-integral path query.
AlphaEstimate alpha_optimize(const DomainSet& domain, const AlphaQuery& query,
                             const AlphaOptions& options = {});

inline AlphaEstimate alpha_optimize(const DomainSet& domain, const AlphaQuery& query, double tol,
                                    int max_rounds) {
  AlphaOptions o;
  o.tol = tol;
  o.max_rounds = max_rounds;
  return alpha_optimize(domain, query, o);
}

// Exhaustive grid oracle: max over g in {0, 1/levels, ..., 1}^V satisfying
// the ball constraints of the normalized minimal integral. Guarded to spaces
// with at most 6 vertices and at most 5 levels. A certified lower bound on
// the true alpha.
double alpha_brute(const DomainSet& domain, const AlphaQuery& query, int levels);

// Same enumeration evaluated against several tau values at once (the grid
// scan is shared; feasibility thresholds differ only in tau).
std::vector<double> alpha_brute_profile(const DomainSet& domain, const AlphaQuery& base,
                                        int levels, const std::vector<double>& taus);

// Verifies the rewrite bound: minimal integral over Gamma^nu_{x,Omega^c}
//   <= d(x,Omega^c) * alpha(nu, kappa, tau*) with tau* = M_{p,kappa d} g(x),
// using the optimizer's lower bound plus its gap as the alpha surrogate.
Certificate alpha_rewrite_bound(const DomainSet& domain, const Field& g, int x, double nu,
                                double kappa, double p, double eps = kEpsNum,
                                const AlphaOptions& options = {});

// Falsifier for the linearity criterion alpha(nu,kappa,tau) <= C_alpha tau:
// any optimizer lower bound exceeding C_alpha tau refutes it; passing is
// evidence, not proof.
Certificate alpha_linear_criterion(const DomainSet& domain, double nu, double kappa, double p,
                                   double C_alpha, const std::vector<double>& tau_grid,
                                   double eps = kEpsNum, const AlphaOptions& options = {});

}  // namespace hardykit
