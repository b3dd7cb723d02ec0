#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sisz/arith.hpp"
#include "sisz/gaussian.hpp"
#include "sisz/lattice.hpp"
#include "sisz/matrix.hpp"
#include "sisz/rng.hpp"
#include "sisz/sis.hpp"

namespace sisz::reduction {

using sisz::to_string;
using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

// m = (n + 1) n
std::size_t default_m(std::size_t n);
// Q = ceil(n sqrt(m) M), exact.
Integer default_modulus(std::size_t n, std::size_t m, const Integer& bound);

enum class Order { written, analysis };  // steps 1-5, or sampling x last from the coset
std::string to_string(Order o);

struct ReductionConfig {
  std::size_t n = 0;
  std::size_t m = 0;
  Integer bound;    // M, entry bound of the basis
  Integer modulus;  // Q
  std::int64_t beta = 0;
  gaussian::EtaTilde eta;
  std::optional<sis::Solver> oracle = sis::Solver::kernel_lll_enum;  // nullopt disables the oracle
  Order order = Order::written;
  std::uint64_t seed = 0;
};

// Defaults m = (n+1)n, Q = ceil(n sqrt(m) M), beta = ceil(beta_n) + 1, each
// replaceable. Throws DomainError when the result violates Q >= n sqrt(m) M or beta >= 1.
ReductionConfig make_config(std::size_t n, const Integer& bound, double eta_tilde, std::uint64_t seed,
                            std::optional<Integer> modulus = std::nullopt, std::optional<std::int64_t> beta = std::nullopt);
void validate(const ReductionConfig& config);

// Column j is floor(Q * coefficients_j); each coefficient vector must lie in [0,1)^n.
IntegerMatrix build_A(const std::vector<RatVec>& coefficients, const Integer& modulus);
// Same, from points y_j of P(B); throws DomainError for a y outside P(B).
IntegerMatrix build_A(const lattice::LatticeBasis& basis, const std::vector<RatVec>& ys, const Integer& modulus);

enum class Outcome { success, oracle_failed, zero_output, aborted };
std::string to_string(Outcome o);

struct TrialChecks {
  bool a_in_range = false;     // A in C_Q^{n x m}
  bool yz_bound = false;       // Q^2 |y_j - B a_j / Q|^2 <= n^3 M^2 for every j
  bool membership = false;     // B v_coeffs == v and lattice_membership(v) == v_coeffs
  std::optional<bool> norm_bound;  // |v| <= 16 sqrt2 beta sqrt(nm) log2(n) lambda_n, when lambda_n is known
};

struct Trial {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> x;  // the m Gaussian samples
  std::vector<RatVec> y;               // y_j = x_j mod P(B), exact
  std::vector<IntVec> floor_kappa;     // y_j - x_j = -B floor_kappa_j
  IntegerMatrix a{1, 1};
  std::uint64_t a_hash = 0;
  std::optional<IntVec> r;
  std::optional<IntVec> v_coeffs;
  IntVec v;
  double v_norm = 0;
  TrialChecks checks;
  Outcome outcome = Outcome::aborted;
  std::string diagnostic;
};

// FNV-1a over the matrix text format.
std::uint64_t matrix_hash(const IntegerMatrix& a);

// 16 sqrt(2) beta sqrt(nm) log2(n)
double norm_bound_factor(std::size_t n, std::size_t m, std::int64_t beta);

struct TrialContext {
  std::optional<Integer> lambda_n_squared;  // enables the norm-bound check
  std::optional<double> lambda_n;           // for the coset sampler in analysis order
};

// One run of the short-vectors procedure with a generator seeded from trial_seed.
Trial short_vectors(const lattice::LatticeBasis& basis, const ReductionConfig& config, std::uint64_t trial_seed,
                    std::uint64_t index = 0, const TrialContext& context = {});

struct EtaSchedule {
  Integer r_squared;  // max |b_i^LLL|^2
  double r = 0;
  double eta_hat = 0;  // 2 R log2 n, floored at 2R
  double alpha = 0;    // 2^n n^2
  std::size_t k = 0;   // ceil(log2 alpha) + 2
  std::vector<double> candidates;  // eta_hat 2^{-k}, k = 0..K
};

EtaSchedule eta_schedule(const lattice::LatticeBasis& basis);

// First candidate certified inside [2 eta, 4 eta]; otherwise the one closest to
// 3 eta (geometrically), marked uncertified.
gaussian::EtaTilde select_eta(const EtaSchedule& schedule, const gaussian::SmoothingEstimate& estimate);

struct CollectOptions {
  std::uint64_t max_calls = 1000;
  bool keep_trials = true;
  TrialContext context;
};

struct CollectResult {
  std::vector<lattice::LatticeVector> vectors;  // independent, in order found
  std::size_t rank = 0;
  std::uint64_t calls = 0;
  std::uint64_t successes = 0;
  std::optional<std::uint64_t> successes_to_full_rank;
  std::vector<Trial> trials;
  bool full_rank() const { return !vectors.empty() && rank == vectors.front().coords.size(); }
};

// Trial i uses seed derive_seed(config.seed, first_index + i).
CollectResult collect_independent(const lattice::LatticeBasis& basis, const ReductionConfig& config,
                                  const CollectOptions& options, std::uint64_t first_index = 0);

struct SivpResult {
  std::vector<lattice::LatticeVector> vectors;
  double max_norm = 0;
  Integer lambda_n_squared;
  double lambda_n = 0;
  double achieved_factor = 0;  // max_norm / lambda_n
  double bound_factor = 0;     // 16 sqrt2 beta sqrt(nm) log2 n
  bool success = false;
};

struct SivpOptions {
  std::optional<double> c0;  // measured with oracle_success_profile when absent
  std::size_t profile_trials = 20;
  std::uint64_t budget_multiplier = 1;  // calls per candidate = multiplier * n^{ceil(c0) + 2}
  bool keep_trials = true;
  std::optional<double> eta;  // replaces the schedule's candidates with this single value
};

struct CandidateRun {
  double eta = 0;
  std::uint64_t calls = 0;
  std::uint64_t successes = 0;
  std::size_t rank = 0;
  std::optional<double> max_norm;
};

struct SivpRun {
  ReductionConfig config;
  EtaSchedule schedule;
  double c0 = 0;
  std::uint64_t budget_per_candidate = 0;
  std::vector<CandidateRun> candidates;
  std::vector<Trial> trials;
  std::uint64_t calls = 0;
  std::uint64_t successes = 0;
  SivpResult result;
  std::optional<std::size_t> best_candidate;
};

// eta_schedule, then collect_independent at every candidate; keeps the
// full-rank result with the smallest max norm. config.eta is ignored; options.eta
// replaces the candidate list.
SivpRun sivp_approximate(const lattice::LatticeBasis& basis, const ReductionConfig& config,
                         const SivpOptions& options = {});

json to_json(const ReductionConfig& config);
json to_json(const Trial& trial);
json to_json(const EtaSchedule& schedule);
json transcript_json(const SivpRun& run);
std::string transcript_text(const SivpRun& run);  // dump with a trailing newline

// n,m,M,Q,beta,eta,calls,successes,max_norm,lambda_n,factor
std::string csv_header();
std::string csv_row(const SivpRun& run);

}  // namespace sisz::reduction
