#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardykit/alpha.hpp"
#include "hardykit/certificate.hpp"
#include "hardykit/curves.hpp"
#include "hardykit/field.hpp"

namespace hardykit {

// Parameters of the improvement construction. The auxiliary values are fixed
// by the proof: K = 4 kappa, N = 3 nu, M = 4, delta = 1/4, k the smallest
// integer exceeding (2^p delta^-p C_Gamma^p D^5)^(1/(p-1)), and
// S = 1 + M^k nu + 3 C_A M^k. S may overflow to +inf for large k; log2_S is
// always finite.
struct ImprovementParams {
  double p = 2.0;
  double p_prime = 1.0;
  double q = 1.9;
  double kappa = 1.0;
  double nu = 2.0;
  double K = 4.0;
  double N = 6.0;
  double M = 4.0;
  double delta = 0.25;
  long long k = 1;
  double S = 0.0;
  double log2_S = 0.0;
  double C_Gamma = 1.0;
  double C_A = 1.0;
};

ImprovementParams make_improvement_params(double p, double p_prime, std::optional<double> q,
                                          double kappa, double nu, double C_Gamma, double C_A,
                                          double D,
                                          std::optional<long long> k_override = std::nullopt);

// Nested level sets E_i = { z in Omega : M_{q, kappa d(x,Omega^c)} g(z) > M^i tau },
// i = 1..k. Only the nonempty prefix is materialized; the sets are empty for
// every i past it because they decrease.
struct LevelSets {
  long long k = 0;
  std::vector<std::vector<int>> prefix;
  const std::vector<int>& level(long long i) const;  // 1-based; empty beyond prefix
};

LevelSets level_sets(const DomainSet& domain, const Field& g, int x,
                     const ImprovementParams& params, double tau);

// h = (1/k) sum_{i=1}^k 1_{E_i} M^{i q / p}; vanishes off E_1 (hence off Omega).
Field build_h(const DomainSet& domain, const LevelSets& levels, const ImprovementParams& params);

// Verifies (M_{p, kappa d} h(x))^p <= 2^p D^5 / k^{p-1} through the
// intermediate weak-type chain, and that consequently C_Gamma M_{p,kappa d}
// h(x) < delta.
Certificate essential_estimate_check(const DomainSet& domain, const Field& g, int x,
                                     const ImprovementParams& params, double tau,
                                     double eps = kEpsNum);

// A gap is a maximal run of consecutive path vertices inside E_{i0} extended
// to its flanking vertices outside; a and b index the flanks in the base
// path, d_i is their metric distance. The final gap ends at the path's
// terminal vertex in Omega^c.
struct GapRange {
  int a = -1;
  int b = -1;
  double d_i = 0.0;
  bool final_gap = false;
};

struct GapDecomposition {
  PathRec base_path;
  long long i0 = 0;
  std::vector<std::pair<int, int>> kept_segments;  // inclusive index ranges
  std::vector<GapRange> gaps;                      // non-final, in path order
  std::optional<GapRange> final_gap;
  double gap_sum = 0.0;        // sum of d_i including the final gap
  double gap_sum_bound = 0.0;  // delta M^{-i0 q/p} d(x, Omega^c)
  bool gap_sum_ok = true;
};

GapDecomposition gap_decompose(const DomainSet& domain, const PathRec& gamma0,
                               const std::vector<int>& E_i0, long long i0, int x,
                               const ImprovementParams& params, double tau,
                               double eps = kEpsNum);

// Lower-bound oracle for alpha_{q,Omega}(N, K, M^{i0} tau), used to certify
// the final-gap patch.
using AlphaSurrogate = std::function<double(long long i0)>;

// Full pipeline: level sets, h, essential estimate, base curve gamma_0 from
// the minimal h-integral, pigeonhole choice of i0, gap decomposition, per-gap
// patching by two-point curves, final-gap patching by an alpha-oracle curve,
// and the assembled curve's length and integral bounds. Every stage bound is
// recorded; any failing stage marks the certificate failed.
Certificate construct_improved_curve(const DomainSet& domain, const Field& g, int x,
                                     const ImprovementParams& params, double tau,
                                     const AlphaSurrogate& alpha_surrogate,
                                     double eps = kEpsNum);

// Quantitative choice from the p-Hardy constant C_H and doubling constant D:
// k = ceil((32 C_H)^{p/(p-1)} D^{5/(p-1)} + 1) and the admissible open
// exponent interval (q_min, p) with q_min = max(p', p - p/k).
struct QuantitativeExponents {
  long long k = 0;
  double q_min = 0.0;
  double p = 0.0;
};

QuantitativeExponents quantitative_exponents(double p, double p_prime, double C_H, double D);

// C_alpha = S / (1 - delta M^{k (p-q)/p}); requires delta M^{k(p-q)/p} < 1.
double absorbed_constant(const ImprovementParams& params);

struct ExperimentConfig {
  double nu = 2.0;
  double kappa = 2.0;
  std::vector<double> tau_grid = {0.1, 0.2, 0.5, 1.0};
  int g_trials = 3;           // pipeline g-samples per tau
  int estimate_trials = 120;  // sampling budget for the C_A / C_H estimators
  std::uint64_t seed = 1;
  double tol = 1e-3;  // slack for the evidence checks
  std::optional<double> c_a;
  std::optional<double> c_gamma;  // explicit C_H (= empirical C_Gamma) override
  std::optional<double> q;
  AlphaOptions alpha;
  double eps = kEpsNum;
};

struct ExperimentReport {
  std::string json_text;
  std::string csv_text;
  bool all_pass = false;
};

// End-to-end self-improvement evidence: estimates the constants, fixes the
// improved exponent q, runs the construction pipeline on sampled feasible
// gradient fields, and checks the iteration inequality and the absorbed
// linear bound against optimizer lower bounds. Evidence, not proof; the
// report says so.
ExperimentReport self_improve_experiment(const DomainSet& domain, double p, double p_prime,
                                         const ExperimentConfig& config);

}  // namespace hardykit
