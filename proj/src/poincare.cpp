#include "hardykit/poincare.hpp"

#include <cmath>
#include <limits>

#include "hardykit/samplers.hpp"

namespace hardykit {

namespace {

void check_poincare_params(const PoincareParams& p) {
  if (!(p.p >= 1.0)) throw ValidationError("poincare exponent p must be >= 1");
  if (!(p.C_PI > 0.0)) throw ValidationError("C_PI must be positive");
  if (!(p.lambda >= 1.0)) throw ValidationError("lambda must be >= 1");
}

void check_char_params(const CurveCharParams& p) {
  if (!(p.p >= 1.0)) throw ValidationError("characterization exponent p must be >= 1");
  if (!(p.C_A > 0.0)) throw ValidationError("C_A must be positive");
  if (!(p.nu > 1.0)) throw ValidationError("nu must exceed 1 (the quasiconvexity constant)");
  if (!(p.kappa >= 1.0)) throw ValidationError("kappa must be >= 1");
}

}  // namespace

Certificate poincare_ball_check(const Space& space, const Field& u, const Field& g,
                                const PoincareParams& params, const Ball& B, double eps) {
  check_poincare_params(params);
  check_field(space, u);
  check_field(space, g);
  if (!is_nonnegative(g)) throw ValidationError("g must be nonnegative");
  if (B.members.empty() || !(B.radius > 0.0)) throw ValidationError("invalid ball");

  Certificate c;
  c.kind = "poincare-ball";
  c.eps = eps;
  auto verified = verify_upper_gradient(space, u, g);
  c.notes.push_back(!verified.has_value()  ? "upper-gradient: asserted"
                    : *verified            ? "upper-gradient: verified"
                                           : "upper-gradient: violated");

  double ub = 0.0;
  for (int v : B.members) ub += u[v] * space.measure(v);
  ub /= B.measure;
  double lhs = 0.0;
  for (int v : B.members) lhs += std::abs(u[v] - ub) * space.measure(v);
  lhs /= B.measure;

  Ball lamB = space.ball(B.center, params.lambda * B.radius);
  double gp = 0.0;
  for (int v : lamB.members) gp += std::pow(g[v], params.p) * space.measure(v);
  gp /= lamB.measure;

  c.lhs = lhs;
  c.rhs = params.C_PI * B.radius * std::pow(gp, 1.0 / params.p);
  c.set_constant("C_PI", params.C_PI);
  c.set_constant("p", params.p);
  c.set_constant("lambda", params.lambda);
  c.set_constant("radius", B.radius);
  c.set_constant("u_B", ub);
  c.certify();
  return c;
}

Certificate two_point_char(const Space& space, const Field& g, int x, int y,
                           const CurveCharParams& params, double eps) {
  check_char_params(params);
  check_field(space, g);
  if (!is_gradient_field(g)) throw ValidationError("g must take values in [0,1]");
  if (x == y) throw ValidationError("two_point_char requires x != y");
  const double d = space.dist(x, y);
  const double r = params.kappa * d;
  MinPathResult mp = min_integral_path(space, g, {x, {y}, params.nu});

  Certificate c;
  c.kind = "poincare-two-point";
  c.eps = eps;
  c.lhs = mp.value;
  double mx = restricted_maximal(space, g, params.p, r, x);
  double my = restricted_maximal(space, g, params.p, r, y);
  c.rhs = params.C_A * d * (mx + my);
  c.set_constant("C_A", params.C_A);
  c.set_constant("p", params.p);
  c.set_constant("nu", params.nu);
  c.set_constant("kappa", params.kappa);
  c.set_constant("d", d);
  c.set_constant("maximal_x", mx);
  c.set_constant("maximal_y", my);
  c.witness_path = mp.path;
  c.certify();
  return c;
}

double estimate_CA(const Space& space, double p, double nu, double kappa, int trials,
                   std::uint64_t seed) {
  if (trials < 1) throw ValidationError("estimate_CA needs trials >= 1");
  CurveCharParams params{p, 1.0, nu, kappa};
  check_char_params(params);
  const int n = space.vertex_count();
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(t)));
    int anchor = static_cast<int>(rng.next_below(n));
    Field g = sample_gradient_field(space, rng, anchor);
    int x = static_cast<int>(rng.next_below(n));
    int y = static_cast<int>(rng.next_below(n));
    if (x == y) y = (y + 1) % n;
    double d = space.dist(x, y);
    double lhs = min_integral_path(space, g, {x, {y}, nu}).value;
    double denom =
        d * (restricted_maximal(space, g, p, kappa * d, x) +
             restricted_maximal(space, g, p, kappa * d, y));
    double ratio;
    if (denom > 0.0)
      ratio = lhs / denom;
    else
      ratio = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    best = std::max(best, ratio);
  }
  return best;
}

}  // namespace hardykit
