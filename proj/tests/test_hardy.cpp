#include <doctest.h>

#include <cmath>

#include "hardykit/curves.hpp"
#include "hardykit/hardy.hpp"
#include "hardykit/maximal.hpp"
#include "hardykit/rng.hpp"
#include "hardykit/samplers.hpp"
#include "helpers.hpp"

using namespace hardykit;
using testutil::make_space;
using testutil::path_abc;

TEST_CASE("pointwise hardy: zero u always passes") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  Certificate c = pointwise_hardy_check(dom, Field::zeros(s), Field::zeros(s),
                                        {1.0, 1.0, 1.0}, 0);
  CHECK(c.lhs == 0.0);
  CHECK(c.pass);
}

TEST_CASE("pointwise hardy: hand-computed boundary constant") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  Field u({2.0, 1.0, 0.0});
  Field g = Field::constant(s, 1.0);
  // lhs = 2, d = 2, M_{1,4} g(a) = 1: passes iff C_H >= 1.
  Certificate pass = pointwise_hardy_check(dom, u, g, {1.0, 1.0, 2.0}, 0);
  CHECK(pass.lhs == doctest::Approx(2.0));
  CHECK(pass.rhs == doctest::Approx(2.0));
  CHECK(pass.pass);
  bool verified = false;
  for (const auto& note : pass.notes) verified = verified || note == "upper-gradient: verified";
  CHECK(verified);
  Certificate fail = pointwise_hardy_check(dom, u, g, {1.0, 0.9, 2.0}, 0);
  CHECK_FALSE(fail.pass);
}

TEST_CASE("pointwise hardy: zero gradient with nonzero u fails for every constant") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  Field u({1.0, 0.0, 0.0});
  Certificate c = pointwise_hardy_check(dom, u, Field::zeros(s), {1.0, 1000.0, 1.0}, 0);
  CHECK(c.rhs == 0.0);
  CHECK_FALSE(c.pass);
  bool flagged = false;
  for (const auto& note : c.notes) flagged = flagged || note == "upper-gradient: violated";
  CHECK(flagged);
}

TEST_CASE("pointwise hardy: validation errors") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  Field u({1.0, 1.0, 1.0});  // nonzero on the complement
  CHECK_THROWS_AS(pointwise_hardy_check(dom, u, Field::zeros(s), {1.0, 1.0, 1.0}, 0),
                  ValidationError);
  CHECK_THROWS_AS(
      pointwise_hardy_check(dom, Field::zeros(s), Field::zeros(s), {1.0, 1.0, 1.0}, 2),
      ValidationError);
}

TEST_CASE("hardy curve characterization: zero and constant fields") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  Certificate z = hardy_curve_char(dom, Field::zeros(s), {1.0, 1.0, 2.0, 1.0}, 0);
  CHECK(z.lhs == 0.0);
  CHECK(z.pass);
  Certificate one = hardy_curve_char(dom, Field::constant(s, 1.0), {1.0, 1.0, 2.0, 1.0}, 0);
  CHECK(one.lhs == doctest::Approx(2.0));  // geodesic integral equals d
  CHECK(one.rhs == doctest::Approx(2.0));
  CHECK(one.pass);
  Certificate fail = hardy_curve_char(dom, Field::constant(s, 1.0), {1.0, 0.99, 2.0, 1.0}, 0);
  CHECK_FALSE(fail.pass);
}

TEST_CASE("hardy curve characterization: wall on a 3x3 grid") {
  // 3x3 grid; complement is the far corner; g is a wall through the middle
  // column except for a gate at the top.
  std::vector<std::string> ids;
  std::vector<std::tuple<int, int, double>> edges;
  auto at = [](int r, int c) { return r * 3 + c; };
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      ids.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
      if (c + 1 < 3) edges.push_back({at(r, c), at(r, c + 1), 1.0});
      if (r + 1 < 3) edges.push_back({at(r, c), at(r + 1, c), 1.0});
    }
  Space s = make_space(ids, std::vector<double>(9, 1.0), edges);
  std::vector<int> omega;
  for (int v = 0; v + 1 < 9; ++v) omega.push_back(v);
  DomainSet dom(s, omega);
  Field g = Field::zeros(s);
  g[at(1, 1)] = 1.0;
  g[at(2, 1)] = 1.0;  // wall on the middle column, rows 1-2; gate at row 0
  int x = at(1, 0);
  Certificate c = hardy_curve_char(dom, g, {1.0, 1.0, 3.0, 1.0}, x);
  MinPathResult oracle = brute_force_min_path(s, g, {x, dom.complement(), 3.0});
  CHECK(c.lhs == doctest::Approx(oracle.value));
  CHECK(c.lhs < 1.0);  // the detour through the gate beats crossing the wall
}

TEST_CASE("restricted variant rejects mass on the complement and counts interior mass") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  Field bad = Field::constant(s, 1.0);
  CHECK_THROWS_AS(hardy_char_restricted(dom, bad, {1.0, 1.0, 2.0, 1.0}, 0), ValidationError);
  Field good({1.0, 1.0, 0.0});  // indicator of omega
  Certificate c = hardy_char_restricted(dom, good, {1.0, 1.0, 2.0, 1.0}, 0);
  // Trapezoid mass: edge a-b contributes 1, edge b-c contributes 1/2.
  CHECK(c.lhs == doctest::Approx(1.5));
  Certificate z = hardy_char_restricted(dom, Field::zeros(s), {1.0, 1.0, 2.0, 1.0}, 0);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
}

TEST_CASE("estimate_CH: three-vertex path sanity and determinism") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  // g == 1 gives ratio exactly 1 at both omega points; the estimator must
  // stay finite here (kappa >= nu keeps zero denominators out of reach).
  Certificate a = hardy_curve_char(dom, Field::constant(s, 1.0), {1.0, 1.0, 2.0, 2.0}, 0);
  Certificate b = hardy_curve_char(dom, Field::constant(s, 1.0), {1.0, 1.0, 2.0, 2.0}, 1);
  CHECK(a.lhs == doctest::Approx(a.rhs));
  CHECK(b.lhs == doctest::Approx(b.rhs));
  double est = estimate_CH(dom, 1.0, 2.0, 2.0, 150, 99);
  CHECK(est >= 0.0);
  CHECK(std::isfinite(est));
  CHECK(estimate_CH(dom, 1.0, 2.0, 2.0, 150, 99) == est);
  double fewer = estimate_CH(dom, 1.0, 2.0, 2.0, 40, 99);
  CHECK(fewer <= est + 1e-15);
}

TEST_CASE("curve-characterization lhs is bounded by nu d for g below 1") {
  SplitMix64 rng(7404);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(7));
    Space s = sample_connected_space(rng, n, 0.5, 2.0, 0.5, 2.0);
    std::vector<int> omega;
    for (int v = 0; v + 1 < n; ++v) omega.push_back(v);
    DomainSet dom(s, omega);
    Field g = sample_gradient_field(s, rng, 0);
    int x = omega[rng.next_below(omega.size())];
    double nu = rng.next_in(1.1, 3.0);
    Certificate c = hardy_curve_char(dom, g, {1.0, 1.0, nu, 1.0}, x);
    CHECK(c.lhs <= nu * dom.dist_to_complement(x) + kEpsNum);
  }
}

TEST_CASE("estimate_CH shrinks as the exponent grows") {
  SplitMix64 rng(7401);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 4 + static_cast<int>(rng.next_below(5));
    Space s = sample_connected_space(rng, n, 0.5, 2.0, 0.5, 2.0);
    std::vector<int> omega;
    for (int v = 0; v + 1 < n; ++v) omega.push_back(v);
    DomainSet dom(s, omega);
    double lo = estimate_CH(dom, 1.0, 2.0, 2.0, 60, 5 + trial);
    double hi = estimate_CH(dom, 2.0, 2.0, 2.0, 60, 5 + trial);
    CHECK(hi <= lo + kEpsNum);
  }
}

TEST_CASE("forward test function") {
  Space s = path_abc();
  DomainSet dom(s, {0, 1});
  // g == 0, delta = 1: h == 1, so u(y) = d(y, complement).
  Field u = forward_test_function(dom, Field::zeros(s), 0, 1.0, 1.0, 1.0);
  CHECK(u[0] == doctest::Approx(2.0));
  CHECK(u[1] == doctest::Approx(1.0));
  CHECK(u[2] == 0.0);
  CHECK_THROWS_AS(forward_test_function(dom, Field::zeros(s), 0, 1.0, 1.0, 0.0),
                  ValidationError);

  SplitMix64 rng(7402);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(7));
    Space sp = sample_connected_space(rng, n, 0.5, 2.0, 0.5, 2.0);
    std::vector<int> omega;
    for (int v = 0; v + 1 < n; ++v) omega.push_back(v);
    DomainSet d2(sp, omega);
    Field g = sample_gradient_field(sp, rng, 0);
    int x = omega[rng.next_below(omega.size())];
    double delta = rng.next_in(0.1, 1.0);
    double kappa = rng.next_in(1.0, 3.0);
    double p = rng.next_in(1.0, 3.0);
    Field u2 = forward_test_function(d2, g, x, kappa, p, delta);
    for (int c : d2.complement()) CHECK(u2[c] == 0.0);
    CHECK(u2[x] >= delta * d2.dist_to_complement(x) - kEpsNum);
    // u is controlled by h along every simple path.
    double shift = restricted_maximal(sp, g, p, kappa * d2.dist_to_complement(x), x) + delta;
    Field h = g;
    for (double& v : h.values) v += shift;
    auto ok = verify_upper_gradient(sp, u2, h);
    REQUIRE(ok.has_value());
    CHECK(*ok);
  }
}

TEST_CASE("Hoelder monotonicity of the pointwise certificate") {
  SplitMix64 rng(7403);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(7));
    Space sp = sample_connected_space(rng, n, 0.5, 2.0, 0.5, 2.0);
    std::vector<int> omega;
    for (int v = 0; v + 1 < n; ++v) omega.push_back(v);
    DomainSet dom(sp, omega);
    Field g = sample_gradient_field(sp, rng, 0);
    int x = omega[rng.next_below(omega.size())];
    double p = rng.next_in(1.0, 2.0);
    double kappa = rng.next_in(1.0, 3.0);
    double delta = rng.next_in(0.1, 0.5);
    // Build a valid (u, h) pair from the forward construction.
    double d = dom.dist_to_complement(x);
    double shift = restricted_maximal(sp, g, p, kappa * d, x) + delta;
    Field h = g;
    for (double& v : h.values) v += shift;
    Field u = inf_connection_potential(sp, h, dom);
    double m = restricted_maximal(sp, h, p, kappa * d, x);
    if (!(m > 0.0)) continue;
    double c_star = std::abs(u[x]) / (d * m);
    HardyParams at_p{p, c_star * (1.0 + 1e-12) + 1e-12, kappa};
    CHECK(pointwise_hardy_check(dom, u, h, at_p, x).pass);
    for (double bump : {0.5, 1.0}) {
      HardyParams at_q{p + bump, at_p.C_H, kappa};
      CHECK(pointwise_hardy_check(dom, u, h, at_q, x).pass);
    }
  }
}
