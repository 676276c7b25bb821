#include "hardykit/hardy.hpp"

#include <cmath>
#include <limits>

#include "hardykit/samplers.hpp"

namespace hardykit {

namespace {

void check_hardy_params(const HardyParams& p) {
  if (!(p.p >= 1.0)) throw ValidationError("hardy exponent p must be >= 1");
  if (!(p.C_H > 0.0)) throw ValidationError("C_H must be positive");
  if (!(p.kappa >= 1.0)) throw ValidationError("kappa must be >= 1");
}

void check_char_params(const HardyCharParams& p) {
  if (!(p.p >= 1.0)) throw ValidationError("characterization exponent p must be >= 1");
  if (!(p.C_Gamma > 0.0)) throw ValidationError("C_Gamma must be positive");
  if (!(p.nu > 1.0)) throw ValidationError("nu must exceed 1 (the quasiconvexity constant)");
  if (!(p.kappa >= 1.0)) throw ValidationError("kappa must be >= 1");
}

Certificate char_certificate(const DomainSet& domain, const Field& g,
                             const HardyCharParams& params, int x, double eps,
                             const char* kind) {
  const Space& space = domain.space();
  check_char_params(params);
  check_field(space, g);
  if (!is_nonnegative(g)) throw ValidationError("g must be nonnegative");
  if (!domain.in_omega(x))
    throw ValidationError("vertex " + space.id_of(x) + " is not in omega");
  const double d = domain.dist_to_complement(x);
  MinPathResult mp = min_integral_path(space, g, {x, domain.complement(), params.nu});

  Certificate c;
  c.kind = kind;
  c.eps = eps;
  c.lhs = mp.value;
  double mg = restricted_maximal(space, g, params.p, params.kappa * d, x);
  c.rhs = params.C_Gamma * d * mg;
  c.set_constant("C_Gamma", params.C_Gamma);
  c.set_constant("p", params.p);
  c.set_constant("nu", params.nu);
  c.set_constant("kappa", params.kappa);
  c.set_constant("d", d);
  c.set_constant("maximal_x", mg);
  c.witness_path = mp.path;
  c.certify();
  return c;
}

}  // namespace

Certificate pointwise_hardy_check(const DomainSet& domain, const Field& u, const Field& g,
                                  const HardyParams& params, int x, double eps) {
  const Space& space = domain.space();
  check_hardy_params(params);
  check_field(space, u);
  check_field(space, g);
  if (!is_nonnegative(g)) throw ValidationError("g must be nonnegative");
  if (!domain.in_omega(x))
    throw ValidationError("vertex " + space.id_of(x) + " is not in omega");
  for (int c : domain.complement())
    if (u[c] != 0.0) throw ValidationError("u must vanish on the omega complement");

  Certificate c;
  c.kind = "pointwise-hardy";
  c.eps = eps;
  auto verified = verify_upper_gradient(space, u, g);
  c.notes.push_back(!verified.has_value()  ? "upper-gradient: asserted"
                    : *verified            ? "upper-gradient: verified"
                                           : "upper-gradient: violated");
  const double d = domain.dist_to_complement(x);
  double mg = restricted_maximal(space, g, params.p, params.kappa * d, x);
  c.lhs = std::abs(u[x]);
  c.rhs = params.C_H * d * mg;
  c.set_constant("C_H", params.C_H);
  c.set_constant("p", params.p);
  c.set_constant("kappa", params.kappa);
  c.set_constant("d", d);
  c.set_constant("maximal_x", mg);
  c.certify();
  return c;
}

Certificate hardy_curve_char(const DomainSet& domain, const Field& g,
                             const HardyCharParams& params, int x, double eps) {
  return char_certificate(domain, g, params, x, eps, "hardy-curve");
}

Certificate hardy_char_restricted(const DomainSet& domain, const Field& g,
                                  const HardyCharParams& params, int x, double eps) {
  for (int c : domain.complement())
    if (g.values[c] != 0.0)
      throw ValidationError("restricted variant: g must vanish on the omega complement");
  return char_certificate(domain, g, params, x, eps, "hardy-curve-restricted");
}

double estimate_CH(const DomainSet& domain, double p, double nu, double kappa, int trials,
                   std::uint64_t seed) {
  if (trials < 1) throw ValidationError("estimate_CH needs trials >= 1");
  HardyCharParams params{p, 1.0, nu, kappa};
  check_char_params(params);
  const Space& space = domain.space();
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(t)));
    const auto& omega = domain.omega();
    int anchor = omega[rng.next_below(omega.size())];
    Field g = sample_gradient_field(space, rng, anchor);
    for (int x : omega) {
      double d = domain.dist_to_complement(x);
      double lhs = min_integral_path(space, g, {x, domain.complement(), nu}).value;
      double denom = d * restricted_maximal(space, g, p, kappa * d, x);
      double ratio;
      if (denom > 0.0)
        ratio = lhs / denom;
      else
        ratio = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      best = std::max(best, ratio);
    }
  }
  return best;
}

Field forward_test_function(const DomainSet& domain, const Field& g, int x, double kappa,
                            double p, double delta) {
  const Space& space = domain.space();
  check_field(space, g);
  if (!is_nonnegative(g)) throw ValidationError("g must be nonnegative");
  if (!(delta > 0.0)) throw ValidationError("delta must be positive");
  if (!(kappa >= 1.0)) throw ValidationError("kappa must be >= 1");
  if (!domain.in_omega(x))
    throw ValidationError("vertex " + space.id_of(x) + " is not in omega");
  const double d = domain.dist_to_complement(x);
  const double shift = restricted_maximal(space, g, p, kappa * d, x) + delta;
  Field h = g;
  for (double& v : h.values) v += shift;
  return inf_connection_potential(space, h, domain);
}

}  // namespace hardykit
