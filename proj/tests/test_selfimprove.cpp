#include <doctest.h>

#include <cmath>

#include "hardykit/gen.hpp"
#include "hardykit/maximal.hpp"
#include "hardykit/rng.hpp"
#include "hardykit/samplers.hpp"
#include "hardykit/selfimprove.hpp"
#include "helpers.hpp"

using namespace hardykit;
using testutil::make_space;
using testutil::path_abc;

TEST_CASE("improvement params: fixed auxiliaries and the k bound") {
  ImprovementParams P = make_improvement_params(2.0, 1.0, 1.9, 1.5, 2.0, 0.5, 1.0, 1.2);
  CHECK(P.K == 6.0);
  CHECK(P.N == 6.0);
  CHECK(P.M == 4.0);
  CHECK(P.delta == 0.25);
  double bound = std::pow(8.0 * 0.5, 2.0) * std::pow(1.2, 5.0);  // (8 C_Gamma)^2 D^5
  CHECK(static_cast<double>(P.k) > bound);
  CHECK(P.k == 41);  // ceil(39.81312 + 1)
  CHECK(P.S == doctest::Approx(1.0 + std::exp2(2.0 * 41) * (2.0 + 3.0)));
  CHECK(P.log2_S == doctest::Approx(std::log2(P.S)));
  // A large k overflows S into +inf while log2_S stays finite.
  ImprovementParams big = make_improvement_params(2.0, 1.0, 1.9, 1.5, 2.0, 0.5, 1.0, 2.0);
  CHECK(big.k == 513);  // ceil(512 + 1)
  CHECK(!std::isfinite(big.S));
  CHECK(big.log2_S == doctest::Approx(2.0 * 513 + std::log2(5.0)));

  CHECK_THROWS_AS(make_improvement_params(1.0, 0.5, {}, 1.0, 2.0, 1.0, 1.0, 2.0),
                  ValidationError);
  CHECK_THROWS_AS(make_improvement_params(2.0, 0.5, {}, 1.0, 2.0, 1.0, 1.0, 2.0),
                  ValidationError);  // p' < max(1, p/2)
  CHECK_THROWS_AS(make_improvement_params(2.0, 1.0, 2.5, 1.0, 2.0, 1.0, 1.0, 2.0),
                  ValidationError);  // q outside (p', p)
  CHECK_THROWS_AS(make_improvement_params(2.0, 1.0, {}, 1.0, 2.0, 1.0, 1.0, 2.0, 3),
                  ValidationError);  // k override below its bound
}

TEST_CASE("default q sits inside the admissible interval and absorbs") {
  ImprovementParams P = make_improvement_params(2.0, 1.0, {}, 1.0, 2.0, 0.05, 1.0, 2.0);
  CHECK(P.q > P.p_prime);
  CHECK(P.q < P.p);
  double factor = P.delta * std::pow(P.M, static_cast<double>(P.k) * (P.p - P.q) / P.p);
  CHECK(factor < 1.0);
  CHECK(std::isfinite(absorbed_constant(P)));
}

TEST_CASE("level sets: degenerate cases") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  ImprovementParams P = make_improvement_params(2.0, 1.0, 1.9, 1.0, 2.0, 0.05, 1.0,
                                                s.doubling_constant());
  LevelSets empty = level_sets(dom, Field::zeros(s), 0, P, 0.5);
  CHECK(empty.prefix.empty());
  CHECK(empty.level(1).empty());
  CHECK(empty.k == P.k);
  // tau >= 1/M empties every level since g <= 1 bounds the averages by 1.
  Field g = Field::constant(s, 0.2);
  LevelSets still_empty = level_sets(dom, g, 0, P, 0.3);
  CHECK(still_empty.prefix.empty());
  // Infeasible g rejected.
  CHECK_THROWS_AS(level_sets(dom, Field::constant(s, 1.0), 0, P, 0.1), ValidationError);
  CHECK_THROWS_AS(level_sets(dom, g, 0, P, 0.0), ValidationError);
}

TEST_CASE("level sets: nested and matching their defining inequality") {
  Space s = gen_grid(4, 4);
  std::vector<int> omega;
  for (int v = 0; v + 1 < s.vertex_count(); ++v) omega.push_back(v);
  DomainSet dom(s, omega);
  // q near 1 keeps indicator averages close to measure fractions, so the
  // cluster's singleton balls clear the M tau threshold.
  ImprovementParams P = make_improvement_params(2.0, 1.0, 1.05, 1.0, 2.0, 0.05, 1.0,
                                                s.doubling_constant());
  Field g = Field::zeros(s);
  g[s.index_of("r0c3")] = 1.0;
  int x = s.index_of("r3c0");
  double d = dom.dist_to_complement(x);
  double tau = restricted_maximal(s, g, P.q, P.K * d, x) + 1e-12;
  LevelSets ls = level_sets(dom, g, x, P, tau);
  REQUIRE(!ls.prefix.empty());
  double threshold = tau;
  for (size_t i = 0; i < ls.prefix.size(); ++i) {
    threshold *= P.M;
    std::vector<int> expect;
    for (int z : dom.omega())
      if (restricted_maximal(s, g, P.q, P.kappa * d, z) > threshold) expect.push_back(z);
    CHECK(ls.prefix[i] == expect);
    if (i > 0)
      for (int v : ls.prefix[i])
        CHECK(std::binary_search(ls.prefix[i - 1].begin(), ls.prefix[i - 1].end(), v));
  }
}

TEST_CASE("build_h formula") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  ImprovementParams P;
  P.p = 2.0;
  P.q = 1.9;
  P.k = 2;
  LevelSets ls;
  ls.k = 2;
  ls.prefix = {{1}, {1}};
  Field h = build_h(dom, ls, P);
  double r = std::pow(4.0, 1.9 / 2.0);
  CHECK(h[1] == doctest::Approx((r + r * r) / 2.0));
  CHECK(h[0] == 0.0);
  ls.prefix = {{1}};
  Field h1 = build_h(dom, ls, P);
  CHECK(h1[1] == doctest::Approx(r / 2.0));
  // All levels empty.
  ls.prefix = {};
  Field h0 = build_h(dom, ls, P);
  for (int v = 0; v < 3; ++v) CHECK(h0[v] == 0.0);
  // k mismatch and non-nested levels rejected.
  ls.k = 3;
  CHECK_THROWS_AS(build_h(dom, ls, P), ValidationError);
  ls.k = 2;
  ls.prefix = {{1}, {2}};
  CHECK_THROWS_AS(build_h(dom, ls, P), ValidationError);
}

TEST_CASE("essential estimate: zero field passes, feasible samples pass") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  ImprovementParams P = make_improvement_params(2.0, 1.0, 1.9, 1.0, 2.0, 0.05, 1.0,
                                                s.doubling_constant());
  Certificate c0 = essential_estimate_check(dom, Field::zeros(s), 0, P, 0.5);
  CHECK(c0.lhs == 0.0);
  CHECK(c0.pass);

  SplitMix64 rng(7601);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(10));
    Space sp = sample_connected_space(rng, n, 0.5, 2.0, 0.5, 4.0);
    std::vector<int> omega;
    for (int v = 0; v + 1 < n; ++v) omega.push_back(v);
    DomainSet d2(sp, omega);
    ImprovementParams P2 = make_improvement_params(2.0, 1.0, 1.9, 1.0, 2.0, 0.05, 1.0,
                                                   sp.doubling_constant());
    Field g = sample_gradient_field(sp, rng, 0);
    int x = omega[rng.next_below(omega.size())];
    double feas = restricted_maximal(sp, g, P2.q, P2.K * d2.dist_to_complement(x), x);
    double tau = std::max(feas, 0.05) + 1e-12;
    Certificate c = essential_estimate_check(d2, g, x, P2, tau);
    CHECK(c.pass);
  }
}

TEST_CASE("essential estimate flags an undersized k") {
  // k = 1 with a large C_Gamma violates the strict bound C_Gamma M h(x) < delta.
  Space s = make_space({"p0", "p1", "p2", "p3", "p4"}, {1, 1, 1, 0.01, 1},
                       {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
  DomainSet dom(s, {0, 1, 2, 3});
  ImprovementParams P;
  P.p = 2.0;
  P.p_prime = 1.0;
  P.q = 1.9;
  P.kappa = 1.0;
  P.nu = 2.0;
  P.K = 4.0;
  P.N = 6.0;
  P.M = 4.0;
  P.delta = 0.25;
  P.k = 1;
  P.C_Gamma = 50.0;
  P.C_A = 1.0;
  P.S = 1.0 + std::exp2(2.0) * (P.nu + 3.0 * P.C_A);
  Field g = Field::zeros(s);
  g[3] = 1.0;
  int x = 0;
  double tau = restricted_maximal(s, g, P.q, P.K * dom.dist_to_complement(x), x) + 1e-12;
  Certificate c = essential_estimate_check(dom, g, x, P, tau);
  CHECK(c.constant("C_Gamma_Mh") >= P.delta);
  CHECK_FALSE(c.pass);
}

TEST_CASE("gap decomposition: empty level set keeps the whole path") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  ImprovementParams P = make_improvement_params(2.0, 1.0, 1.9, 1.0, 2.0, 0.05, 1.0,
                                                s.doubling_constant());
  PathRec gamma0 = make_path(s, {0, 1, 2});
  GapDecomposition d = gap_decompose(dom, gamma0, {}, 1, 0, P, 0.1);
  CHECK(d.gaps.empty());
  CHECK(!d.final_gap);
  CHECK(d.kept_segments == std::vector<std::pair<int, int>>{{0, 2}});
  CHECK(d.gap_sum == 0.0);
  CHECK(d.gap_sum_ok);
}

namespace {

ImprovementParams params_for(const Space& s, double c_gamma) {
  return make_improvement_params(2.0, 1.0, 1.9, 1.0, 2.0, c_gamma, 1.0, s.doubling_constant());
}

}  // namespace

TEST_CASE("gap decomposition: one interior gap over a short-edged wall") {
  Space s = make_space({"p0", "p1", "p2", "p3", "p4"}, {1, 1, 0.1, 1, 1},
                       {{0, 1, 1.0}, {1, 2, 0.05}, {2, 3, 0.05}, {3, 4, 1.0}});
  DomainSet dom(s, {0, 1, 2, 3});
  ImprovementParams P = params_for(s, 0.005);
  PathRec gamma0 = make_path(s, {0, 1, 2, 3, 4});
  GapDecomposition d = gap_decompose(dom, gamma0, {2}, 1, 0, P, 0.2);
  REQUIRE(d.gaps.size() == 1);
  CHECK(!d.final_gap);
  CHECK(d.gaps[0].a == 1);
  CHECK(d.gaps[0].b == 3);
  CHECK(d.gaps[0].d_i == doctest::Approx(0.1));
  CHECK(d.gap_sum_ok);
  CHECK(d.kept_segments == std::vector<std::pair<int, int>>{{0, 1}, {3, 4}});
  // Start vertex inside the level set is rejected.
  CHECK_THROWS_AS(gap_decompose(dom, gamma0, {0}, 1, 0, P, 0.2), ValidationError);
  // A fat level set violates the pigeonhole precondition.
  CHECK_THROWS_AS(gap_decompose(dom, gamma0, {1, 2, 3}, 1, 0, P, 0.2), ValidationError);
}

TEST_CASE("gap decomposition: run touching the terminal flags a final gap") {
  Space s = make_space({"p0", "p1", "p2", "p3", "p4"}, {1, 1, 1, 0.1, 1},
                       {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 0.05}, {3, 4, 0.05}});
  DomainSet dom(s, {0, 1, 2, 3});
  ImprovementParams P = params_for(s, 0.005);
  PathRec gamma0 = make_path(s, {0, 1, 2, 3, 4});
  GapDecomposition d = gap_decompose(dom, gamma0, {3}, 1, 0, P, 0.2);
  CHECK(d.gaps.empty());
  REQUIRE(d.final_gap.has_value());
  CHECK(d.final_gap->a == 2);
  CHECK(d.final_gap->b == 4);
  CHECK(d.final_gap->d_i == doctest::Approx(0.1));
  CHECK(d.kept_segments == std::vector<std::pair<int, int>>{{0, 2}});
}

TEST_CASE("construct_improved_curve: zero field gives the geodesic without gaps") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  ImprovementParams P = params_for(s, 0.05);
  Certificate c = construct_improved_curve(dom, Field::zeros(s), 0, P, 0.5,
                                           [](long long) { return 0.0; });
  CHECK(c.pass);
  CHECK(c.lhs == 0.0);
  CHECK(c.constant("gap_count") == 0.0);
  CHECK(c.constant("has_final_gap") == 0.0);
  CHECK(c.witness_path->vertices == std::vector<int>{0, 1, 2});
  // Without a final gap the bound carries no absorption term.
  CHECK(c.rhs == doctest::Approx(P.S * 0.5 * 2.0));
}

TEST_CASE("construct_improved_curve: interior gap instance passes every stage") {
  Space s = make_space({"p0", "p1", "p2", "p3", "p4"}, {1, 1, 0.1, 1, 1},
                       {{0, 1, 1.0}, {1, 2, 0.05}, {2, 3, 0.05}, {3, 4, 1.0}});
  DomainSet dom(s, {0, 1, 2, 3});
  ImprovementParams P = params_for(s, 0.005);
  Field g = Field::zeros(s);
  g[2] = 1.0;
  int x = 0;
  double tau = restricted_maximal(s, g, P.q, P.K * dom.dist_to_complement(x), x) + 1e-12;
  Certificate c = construct_improved_curve(dom, g, x, P, tau, [](long long) { return 1.0; });
  CHECK(c.pass);
  CHECK(c.constant("i0") == 1.0);
  CHECK(c.constant("gap_count") == 1.0);
  CHECK(c.constant("has_final_gap") == 0.0);
}

TEST_CASE("construct_improved_curve: final gap uses the alpha surrogate") {
  Space s = make_space({"p0", "p1", "p2", "p3", "p4"}, {1, 1, 1, 0.1, 1},
                       {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 0.05}, {3, 4, 0.05}});
  DomainSet dom(s, {0, 1, 2, 3});
  ImprovementParams P = params_for(s, 0.005);
  Field g = Field::zeros(s);
  g[3] = 1.0;
  int x = 0;
  double tau = restricted_maximal(s, g, P.q, P.K * dom.dist_to_complement(x), x) + 1e-12;
  // The brute oracle is a certified alpha lower bound on this 5-vertex space.
  AlphaSurrogate surrogate = [&](long long i0) {
    double level = tau * std::pow(P.M, static_cast<double>(i0));
    return alpha_brute(dom, {P.N, P.K, level, P.q, std::nullopt}, 5);
  };
  Certificate c = construct_improved_curve(dom, g, x, P, tau, surrogate);
  CHECK(c.pass);
  CHECK(c.constant("has_final_gap") == 1.0);
  CHECK(c.has_constant("alpha_surrogate"));
  CHECK_THROWS_AS(
      construct_improved_curve(dom, Field::constant(s, 1.0), x, P, 0.01, surrogate),
      ValidationError);  // infeasible g
}

TEST_CASE("quantitative exponents: exact integer cases") {
  QuantitativeExponents a = quantitative_exponents(2.0, 1.0, 1.0 / 32.0, 2.0);
  CHECK(a.k == 33);
  CHECK(a.q_min == doctest::Approx(2.0 - 2.0 / 33.0));
  QuantitativeExponents b = quantitative_exponents(2.0, 1.0, 1.0, 16.0);
  CHECK(b.k == 1073741825LL);
  // delta M^{k(p-q)/p} < 1 iff p - q < p/k, with delta = 1/4 and M = 4.
  for (const auto& qe : {a, b}) {
    double q = 0.5 * (qe.q_min + qe.p);
    double factor =
        0.25 * std::pow(4.0, static_cast<double>(qe.k) * (qe.p - q) / qe.p);
    CHECK(factor < 1.0);
  }
  CHECK_THROWS_AS(quantitative_exponents(1.0, 0.5, 1.0, 2.0), ValidationError);
  CHECK_THROWS_AS(quantitative_exponents(2.0, 2.5, 1.0, 2.0), ValidationError);
}

TEST_CASE("absorbed constant") {
  ImprovementParams P;
  P.p = 2.0;
  P.q = 1.9;
  P.k = 5;
  P.M = 4.0;
  P.delta = 0.25;
  P.S = 1.0;
  double expect = 1.0 / (1.0 - std::pow(4.0, -0.75));
  CHECK(absorbed_constant(P) == doctest::Approx(expect).epsilon(1e-12));
  P.S = 7.5;
  CHECK(absorbed_constant(P) == doctest::Approx(7.5 * expect).epsilon(1e-12));
  // q -> p limit: C_alpha -> S / (1 - delta) = (4/3) S.
  P.q = 2.0 - 1e-13;
  CHECK(absorbed_constant(P) == doctest::Approx(7.5 * 4.0 / 3.0).epsilon(1e-9));
  // Absorption violated.
  P.q = 1.0;
  CHECK_THROWS_AS(absorbed_constant(P), ValidationError);
}

TEST_CASE("self-improvement experiment on a path domain") {
  Space s = gen_path(5);
  std::vector<int> omega{0, 1, 2, 3};
  DomainSet dom(s, omega);
  ExperimentConfig cfg;
  cfg.tau_grid = {0.5, 1.0};
  cfg.g_trials = 2;
  cfg.estimate_trials = 40;
  cfg.seed = 3;
  ExperimentReport rep = self_improve_experiment(dom, 2.0, 1.0, cfg);
  CHECK(rep.all_pass);
  CHECK(rep.json_text.find("evidence") != std::string::npos);
  CHECK(rep.csv_text.rfind("tau,run,x,i0,lhs,rhs,margin,converged", 0) == 0);
  // Byte-stable given the same seed.
  ExperimentReport again = self_improve_experiment(dom, 2.0, 1.0, cfg);
  CHECK(again.json_text == rep.json_text);
  CHECK(again.csv_text == rep.csv_text);
}
