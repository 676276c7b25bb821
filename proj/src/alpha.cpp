#include "hardykit/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardykit/maximal.hpp"
#include "hardykit/parallel.hpp"

namespace hardykit {

namespace {

void check_query(const DomainSet& domain, const AlphaQuery& q) {
  if (!(q.nu > 1.0)) throw ValidationError("alpha query: nu must exceed 1");
  if (!(q.kappa >= 1.0)) throw ValidationError("alpha query: kappa must be >= 1");
  if (!(q.tau >= 0.0)) throw ValidationError("alpha query: tau must be >= 0");
  if (!(q.p >= 1.0)) throw ValidationError("alpha query: p must be >= 1");
  if (q.x && !domain.in_omega(*q.x))
    throw ValidationError("alpha query: x is not in omega");
}

struct BallConstraint {
  std::vector<int> members;
  std::vector<double> mu;
  double bound = 0.0;  // tau^p * mu(B)
};

// Per-path trapezoid coefficients: integral of g along path = sum c[v] g(v),
// with repeated visits accumulating.
std::vector<double> path_coefficients(const Space& space, const PathRec& path) {
  std::vector<double> c(space.vertex_count(), 0.0);
  for (size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    int u = path.vertices[i], v = path.vertices[i + 1];
    double half = 0.5 * space.edge_length(u, v);
    c[u] += half;
    c[v] += half;
  }
  return c;
}

struct PerXResult {
  double value = 0.0;  // raw minimal integral of the witness (not normalized)
  double inner = 0.0;  // final inner optimum (raw units)
  Field g;
  std::vector<PathRec> paths;
  bool converged = false;
};

PerXResult optimize_at(const DomainSet& domain, int x, const AlphaQuery& q,
                       const AlphaOptions& opt) {
  const Space& space = domain.space();
  const int n = space.vertex_count();
  const double d = domain.dist_to_complement(x);
  const double radius = q.kappa * d;
  const double p = q.p;
  const double tau = q.tau;

  std::vector<BallConstraint> constraints;
  std::vector<char> fixed_zero(n, 0);
  for (const Ball& b : space.distinct_balls_containing(x, radius)) {
    BallConstraint bc;
    bc.members = b.members;
    bc.mu.reserve(b.members.size());
    for (int v : b.members) bc.mu.push_back(space.measure(v));
    bc.bound = std::pow(tau, p) * b.measure;
    if (tau == 0.0)
      for (int v : b.members) fixed_zero[v] = 1;
    constraints.push_back(std::move(bc));
  }

  auto to_g = [&](const std::vector<double>& w, Field& g) {
    for (int v = 0; v < n; ++v) g[v] = (p == 1.0) ? w[v] : std::pow(w[v], 1.0 / p);
  };

  auto project = [&](std::vector<double>& w) {
    for (int v = 0; v < n; ++v) w[v] = fixed_zero[v] ? 0.0 : std::min(1.0, std::max(0.0, w[v]));
    if (tau == 0.0) return;  // handled by the fixed-zero mask
    for (int sweep = 0; sweep < opt.projection_sweeps; ++sweep) {
      bool violated = false;
      for (const BallConstraint& bc : constraints) {
        double s = 0.0;
        for (size_t i = 0; i < bc.members.size(); ++i) s += bc.mu[i] * w[bc.members[i]];
        if (s > bc.bound) {
          violated = true;
          double scale = s > 0.0 ? bc.bound / s : 0.0;
          for (int v : bc.members) w[v] *= scale;
        }
      }
      if (!violated) break;
    }
  };

  // Active path set, seeded with the geodesic to the complement.
  std::vector<PathRec> paths;
  std::vector<std::vector<double>> coeffs;
  {
    MinPathResult geo = min_integral_path(space, Field::zeros(space),
                                          {x, domain.complement(), q.nu});
    coeffs.push_back(path_coefficients(space, geo.path));
    paths.push_back(std::move(geo.path));
  }

  std::vector<double> w(n, 0.0);
  double init = std::min(tau, 1.0);
  double initw = std::pow(init, p);
  for (int v = 0; v < n; ++v) w[v] = fixed_zero[v] ? 0.0 : initw;
  project(w);

  Field g = Field::zeros(space);
  auto eval_min = [&](const std::vector<double>& wv, int* argmin) {
    to_g(wv, g);
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (size_t i = 0; i < coeffs.size(); ++i) {
      double acc = 0.0;
      const auto& c = coeffs[i];
      for (int v = 0; v < n; ++v) acc += c[v] * g[v];
      if (acc < best) {
        best = acc;
        arg = static_cast<int>(i);
      }
    }
    if (argmin) *argmin = arg;
    return best;
  };

  double best_outer = -1.0;
  Field best_g = Field::zeros(space);
  double inner_best = 0.0;
  bool converged = false;

  for (int round = 0; round < opt.max_rounds; ++round) {
    // Inner: projected supergradient ascent on w (objective concave in w).
    inner_best = -std::numeric_limits<double>::infinity();
    std::vector<double> w_best = w;
    for (int t = 1; t <= opt.inner_iterations; ++t) {
      int arg = 0;
      double phi = eval_min(w, &arg);
      if (phi > inner_best) {
        inner_best = phi;
        w_best = w;
      }
      double step = 1.0 / std::sqrt(static_cast<double>(t));
      const auto& c = coeffs[arg];
      for (int v = 0; v < n; ++v) {
        if (c[v] == 0.0 || fixed_zero[v]) continue;
        double grad = (p == 1.0)
                          ? c[v]
                          : c[v] * (1.0 / p) * std::pow(std::max(w[v], 1e-12), 1.0 / p - 1.0);
        w[v] += step * grad;
      }
      project(w);
    }
    {
      double phi = eval_min(w, nullptr);
      if (phi > inner_best) {
        inner_best = phi;
        w_best = w;
      }
    }
    w = w_best;

    // Witness: map back to g, repair feasibility exactly, separate.
    Field cand = Field::zeros(space);
    to_g(w_best, cand);
    double m = restricted_maximal(space, cand, p, radius, x);
    if (m > tau && m > 0.0) {
      double scale = tau / m;
      for (double& v : cand.values) v *= scale;
    }
    MinPathResult sep = min_integral_path(space, cand, {x, domain.complement(), q.nu});
    if (sep.value > best_outer) {
      best_outer = sep.value;
      best_g = cand;
    }
    if (sep.value >= inner_best - opt.tol * std::max(1.0, inner_best)) {
      converged = true;
      break;
    }
    bool known = false;
    for (const PathRec& pr : paths)
      if (pr.vertices == sep.path.vertices) {
        known = true;
        break;
      }
    if (known) break;  // inner solve cannot improve against the same cut set
    coeffs.push_back(path_coefficients(space, sep.path));
    paths.push_back(std::move(sep.path));
  }

  PerXResult res;
  res.value = std::max(best_outer, 0.0);
  res.inner = inner_best;
  res.g = best_g;
  res.paths = paths;
  res.converged = converged;
  return res;
}

}  // namespace

AlphaEstimate alpha_optimize(const DomainSet& domain, const AlphaQuery& query,
                             const AlphaOptions& options) {
  check_query(domain, query);
  if (!(options.tol > 0.0)) throw ValidationError("alpha_optimize: tol must be positive");
  if (options.max_rounds < 1) throw ValidationError("alpha_optimize: max_rounds must be >= 1");

  std::vector<int> xs = query.x ? std::vector<int>{*query.x} : domain.omega();
  std::vector<PerXResult> results(xs.size());
  parallel_for_index(static_cast<int>(xs.size()), options.threads,
                     [&](int i) { results[i] = optimize_at(domain, xs[i], query, options); });
  AlphaEstimate est;
  est.value = -1.0;
  double inner_max = 0.0;
  bool all_converged = true;
  for (size_t i = 0; i < xs.size(); ++i) {
    const PerXResult& r = results[i];
    double d = domain.dist_to_complement(xs[i]);
    double val = r.value / d;
    inner_max = std::max(inner_max, r.inner / d);
    all_converged = all_converged && r.converged;
    if (val > est.value) {
      est.value = val;
      est.witness_g = r.g;
      est.witness_x = xs[i];
      est.active_paths = r.paths;
    }
  }
  est.value = std::max(est.value, 0.0);
  est.gap = std::max(0.0, inner_max - est.value);
  est.converged = all_converged;
  return est;
}

std::vector<double> alpha_brute_profile(const DomainSet& domain, const AlphaQuery& base,
                                        int levels, const std::vector<double>& taus) {
  AlphaQuery q = base;
  q.tau = taus.empty() ? 0.0 : *std::min_element(taus.begin(), taus.end());
  check_query(domain, q);
  const Space& space = domain.space();
  const int n = space.vertex_count();
  if (n > 6) throw ValidationError("alpha_brute is guarded to <= 6 vertices");
  if (levels < 1 || levels > 5) throw ValidationError("alpha_brute needs 1 <= levels <= 5");
  for (double t : taus)
    if (!(t >= 0.0)) throw ValidationError("alpha_brute: tau must be >= 0");

  std::vector<double> result(taus.size(), 0.0);
  std::vector<double> level_val(levels + 1), level_pow(levels + 1);
  for (int j = 0; j <= levels; ++j) {
    level_val[j] = static_cast<double>(j) / levels;
    level_pow[j] = std::pow(level_val[j], base.p);
  }

  std::vector<int> xs = base.x ? std::vector<int>{*base.x} : domain.omega();
  for (int x : xs) {
    const double d = domain.dist_to_complement(x);
    const double budget = base.nu * d;
    auto balls = space.distinct_balls_containing(x, base.kappa * d);

    // All budget-feasible simple paths from x that stop at their first
    // complement hit, as trapezoid coefficient vectors.
    std::vector<std::vector<double>> pcoeffs;
    {
      std::vector<int> seq{x};
      std::vector<char> visited(n, 0);
      visited[x] = 1;
      auto dfs = [&](auto&& self, int v, double len) -> void {
        for (auto [w2, elen] : space.neighbors(v)) {
          if (visited[w2]) continue;
          double nlen = len + elen;
          if (!within_budget(nlen, budget)) continue;
          seq.push_back(w2);
          if (!domain.in_omega(w2)) {
            PathRec pr;
            pr.vertices = seq;
            pr.length = nlen;
            pcoeffs.push_back(path_coefficients(space, pr));
          } else {
            visited[w2] = 1;
            self(self, w2, nlen);
            visited[w2] = 0;
          }
          seq.pop_back();
        }
      };
      dfs(dfs, x, 0.0);
    }
    if (pcoeffs.empty()) throw InfeasibleError("no budget-feasible path to the complement");

    // Mixed-radix odometer over grid fields with incremental per-ball sums
    // of g^p mu.
    std::vector<int> digit(n, 0);
    std::vector<double> gval(n, 0.0);
    std::vector<double> ball_sum(balls.size(), 0.0);
    std::vector<std::vector<int>> balls_of(n);
    for (size_t b = 0; b < balls.size(); ++b)
      for (int v : balls[b].members) balls_of[v].push_back(static_cast<int>(b));

    auto set_digit = [&](int v, int j) {
      double delta = level_pow[j] - level_pow[digit[v]];
      if (delta != 0.0)
        for (int b : balls_of[v]) ball_sum[b] += space.measure(v) * delta;
      digit[v] = j;
      gval[v] = level_val[j];
    };

    while (true) {
      // Worst constraint ratio in the p-th power domain.
      double rho_p = 0.0;
      for (size_t b = 0; b < balls.size(); ++b)
        rho_p = std::max(rho_p, ball_sum[b] / balls[b].measure);
      double val = std::numeric_limits<double>::infinity();
      for (const auto& c : pcoeffs) {
        double acc = 0.0;
        for (int v = 0; v < n; ++v) acc += c[v] * gval[v];
        val = std::min(val, acc);
      }
      val /= d;
      for (size_t t = 0; t < taus.size(); ++t) {
        double cap = std::pow(taus[t], base.p);
        if (rho_p <= cap * (1.0 + 1e-12) + 1e-15) result[t] = std::max(result[t], val);
      }
      int pos = 0;
      while (pos < n && digit[pos] == levels) {
        set_digit(pos, 0);
        ++pos;
      }
      if (pos == n) break;
      set_digit(pos, digit[pos] + 1);
    }
  }
  return result;
}

double alpha_brute(const DomainSet& domain, const AlphaQuery& query, int levels) {
  return alpha_brute_profile(domain, query, levels, {query.tau})[0];
}

Certificate alpha_rewrite_bound(const DomainSet& domain, const Field& g, int x, double nu,
                                double kappa, double p, double eps,
                                const AlphaOptions& options) {
  const Space& space = domain.space();
  check_field(space, g);
  if (!is_gradient_field(g)) throw ValidationError("g must take values in [0,1]");
  if (!domain.in_omega(x))
    throw ValidationError("vertex " + space.id_of(x) + " is not in omega");
  const double d = domain.dist_to_complement(x);
  const double tau_star = restricted_maximal(space, g, p, kappa * d, x);
  MinPathResult mp = min_integral_path(space, g, {x, domain.complement(), nu});
  AlphaEstimate est = alpha_optimize(domain, {nu, kappa, tau_star, p, std::nullopt}, options);

  Certificate c;
  c.kind = "alpha-rewrite";
  c.eps = eps;
  c.lhs = mp.value;
  c.rhs = d * (est.value + est.gap);
  c.set_constant("tau_star", tau_star);
  c.set_constant("alpha_lower_bound", est.value);
  c.set_constant("alpha_gap", est.gap);
  c.set_constant("d", d);
  c.set_constant("converged", est.converged ? 1.0 : 0.0);
  c.witness_path = mp.path;
  c.certify();
  return c;
}

Certificate alpha_linear_criterion(const DomainSet& domain, double nu, double kappa, double p,
                                   double C_alpha, const std::vector<double>& tau_grid,
                                   double eps, const AlphaOptions& options) {
  if (tau_grid.empty()) throw ValidationError("alpha_linear_criterion needs a nonempty tau grid");
  if (!(C_alpha > 0.0)) throw ValidationError("C_alpha must be positive");
  Certificate c;
  c.kind = "alpha-linear";
  c.eps = eps;
  c.set_constant("C_alpha", C_alpha);
  c.pass = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (double tau : tau_grid) {
    AlphaEstimate est = alpha_optimize(domain, {nu, kappa, tau, p, std::nullopt}, options);
    double margin = C_alpha * tau - est.value;
    c.set_constant("margin_tau_" + std::to_string(tau), margin);
    if (margin < worst_margin) {
      worst_margin = margin;
      c.lhs = est.value;
      c.rhs = C_alpha * tau;
    }
    if (est.value > C_alpha * tau + eps) c.pass = false;
  }
  c.notes.push_back("falsifier: lower bounds only; passing is evidence, not proof");
  return c;
}

}  // namespace hardykit
