#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sisz/arith.hpp"
#include "sisz/lattice.hpp"
#include "sisz/matrix.hpp"
#include "sisz/rng.hpp"

namespace sisz::stats {

using sisz::to_string;

/// Distance of (X mod q) from uniform on Z_q for X uniform on {0..Q-1}.
struct ModDistanceReport {
  std::int64_t big_q = 0;  // Q
  std::int64_t q = 0;
  std::int64_t t = 0;  // Q = q t + r
  std::int64_t r = 0;
  Rational delta_exact;  // r (q - r) / (Q q)
  Rational upper_bound;  // q / (4 Q)
  bool uniform = false;  // q | Q
};

// Throws DomainError unless Q >= 1 and q >= 2.
ModDistanceReport exact_mod_distance(std::int64_t big_q, std::int64_t q);

struct MatrixModBound {
  Rational bound;          // min(1, n m q / (4 Q)); 0 when q | Q
  Rational product_bound;  // min(1, n m delta_exact)
};

MatrixModBound matrix_mod_distance_bound(std::int64_t n, std::int64_t m, std::int64_t big_q, std::int64_t q);

// ln(m eps / 2): the analytic distance of the reduction's matrix from uniform.
double log_uniformity_bound(std::size_t m, double log_eps);

enum class LiftScan { not_run, over_budget, no_violation, violation_found };
std::string to_string(LiftScan s);

struct LiftReport {
  Integer threshold;          // m (Q - 1) beta
  bool analytic = false;      // q > threshold, so the lifting property holds
  LiftScan scan = LiftScan::not_run;
  std::uint64_t scanned = 0;  // canonical vectors visited
  std::uint64_t violations = 0;
  std::optional<IntVec> counterexample;  // A z = 0 mod q, A z != 0
};

// Checks that every z with |z|_inf <= beta and A z = 0 (mod q) has A z = 0.
// Above the threshold the box is scanned completely; below it the scan stops at
// the first counterexample. Scans larger than budget are skipped.
LiftReport lift_check(const IntegerMatrix& a, std::int64_t big_q, std::int64_t beta, std::int64_t q,
                      std::uint64_t budget = 10'000'000);

enum class Verdict { incompatible, compatible, inapplicable };
std::string to_string(Verdict v);

struct IncompatibilityReport {
  std::int64_t n = 0, m = 0, big_q = 0, beta = 0;
  Integer lifting_threshold;     // lifting needs q > m (Q - 1) beta
  Rational uniformity_slope;     // uniformity ceiling n m q / (4 Q) = slope * q
  Integer nondivisor_ceiling;    // q not dividing Q needs q <= Q / (n m), floored
  Verdict verdict = Verdict::inapplicable;
  std::vector<std::string> witnesses;
};

IncompatibilityReport incompatibility_report(std::int64_t n, std::int64_t m, std::int64_t big_q, std::int64_t beta);

struct EmpiricalDistance {
  std::uint64_t domain = 0;
  std::uint64_t trials = 0;
  double estimate = 0;    // 1/2 sum |p_hat(a) - 1/domain|
  double half_width = 0;  // 99% deviation bound for the true-distribution estimate
  bool bias_warning = false;  // trials < 10 * domain
};

EmpiricalDistance distance_from_counts(const std::vector<std::uint64_t>& counts);
// The sampler returns indices in [0, domain).
EmpiricalDistance empirical_statistical_distance(const std::function<std::uint64_t()>& sampler, std::uint64_t domain,
                                                 std::uint64_t trials);

enum class Channel { gaussian, exact_uniform };
std::string to_string(Channel c);

struct UniformityOptions {
  Channel channel = Channel::gaussian;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t batch = 4096;
  std::uint64_t table_limit = 1'000'000;  // largest Q^n tabulated in full
};

struct MarginalReport {
  std::vector<EmpiricalDistance> marginals;  // one per coordinate of a
  std::uint64_t collisions = 0;              // equal pairs among the samples
  double expected_collisions = 0;            // trials (trials - 1) / (2 Q^n)
};

struct UniformityResult {
  Channel channel = Channel::gaussian;
  std::optional<EmpiricalDistance> distance;  // full table when Q^n <= table_limit
  std::optional<MarginalReport> marginal;     // otherwise
};

// Samples y mod P(B) (Gaussian of parameter eta_tilde, or exactly uniform
// y = B u), forms a = floor(Q B^{-1} y) and measures its distance from uniform on
// C_Q^n. Deterministic in (seed, stream).
UniformityResult column_uniformity_test(const lattice::LatticeBasis& basis, std::int64_t big_q, double eta_tilde,
                                        std::uint64_t trials, const UniformityOptions& options = {});

// Quantile of the exact-uniform channel's distance over independent replicates.
double uniformity_null_band(const lattice::LatticeBasis& basis, std::int64_t big_q, std::uint64_t trials,
                            std::size_t replicates = 200, double quantile = 0.99, std::uint64_t seed = 0);

}  // namespace sisz::stats
