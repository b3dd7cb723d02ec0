#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "sisz/arith.hpp"
#include "sisz/matrix.hpp"
#include "sisz/rng.hpp"

namespace sisz::sis {

using sisz::to_string;

enum class Provenance { random_uniform, from_reduction, planted, file };
std::string to_string(Provenance p);

/// Non-modular SIS: find z != 0 with A z = 0 over the integers and |z|_inf <= beta,
/// for A with entries in {0, ..., Q-1}.
class SisInstance {
 public:
  // Throws DomainError unless m > n, Q >= 1, beta >= 0 and 0 <= a_ij < Q.
  SisInstance(IntegerMatrix a, std::int64_t modulus, std::int64_t beta, Provenance provenance = Provenance::file);

  const IntegerMatrix& matrix() const { return a_; }
  std::size_t n() const { return a_.rows(); }
  std::size_t m() const { return a_.cols(); }
  std::int64_t modulus() const { return modulus_; }  // Q
  std::int64_t beta() const { return beta_; }
  Provenance provenance() const { return provenance_; }

  SisInstance with_beta(std::int64_t beta) const { return SisInstance(a_, modulus_, beta, provenance_); }

 private:
  IntegerMatrix a_;
  std::int64_t modulus_;
  std::int64_t beta_;
  Provenance provenance_;
};

// Instance file: "n m Q beta" header, then A in the matrix text format.
std::string format_instance(const SisInstance& inst);
SisInstance parse_instance(const std::string& text);

// Entries drawn uniformly from {0..Q-1} in row-major order.
SisInstance random_instance(std::size_t n, std::size_t m, std::int64_t modulus, std::int64_t beta, Rng& rng);
// Random instance whose second column repeats the first, so (1, -1, 0, ...) solves it.
SisInstance planted_instance(std::size_t n, std::size_t m, std::int64_t modulus, std::int64_t beta, Rng& rng);

enum class Solver { brute_force, kernel_lll_enum };
std::string to_string(Solver s);
Solver parse_solver(const std::string& name);  // "brute-force" | "lattice"

struct SisSolution {
  IntVec z;  // sign-canonical: first nonzero entry positive
  Solver solver;
};

struct SolveResult {
  std::optional<SisSolution> solution;
  bool exhaustive = false;  // "none" is a certificate that no solution exists
  std::uint64_t work = 0;   // vectors scanned or enumeration nodes
};

struct VerifyReport {
  bool length_ok = false;
  bool nonzero = false;
  bool kernel = false;      // A z == 0 exactly
  bool norm_bound = false;  // |z|_inf <= beta
  Integer linf;
  bool passed() const { return length_ok && nonzero && kernel && norm_bound; }
};

VerifyReport verify_solution(const SisInstance& inst, const IntVec& z);

// Negates z when its first nonzero entry is negative.
IntVec sign_canonical(IntVec z);

// Visits every sign-canonical nonzero z in {-beta..beta}^m in lexicographic
// order (values ascending), passing z and A z; return false to stop. Returns
// the number of vectors visited. Entries of A and A z must fit in 64 bits.
using BoxVisitor = std::function<bool(std::span<const std::int64_t> z, std::span<const std::int64_t> az)>;
std::uint64_t scan_canonical_box(const IntegerMatrix& a, std::int64_t beta, const BoxVisitor& visit);

struct BruteForceOptions {
  std::uint64_t budget = 100'000'000;  // limit on (2 beta + 1)^m
};

// Scans the sign-canonical nonzero vectors of {-beta..beta}^m in lexicographic
// order (values ascending) and returns the first solution.
// Throws DomainError for beta = 0, CapabilityError when over budget.
SolveResult solve_sis_bruteforce(const SisInstance& inst, const BruteForceOptions& options = {});

struct LatticeSolverOptions {
  std::uint64_t node_budget = 200'000'000;
  std::size_t max_m = 64;
};

// Kernel lattice basis by Hermite elimination, LLL, then a check of the reduced
// basis vectors followed by enumeration of the l2 ball of radius sqrt(m) beta,
// which contains the whole beta-box. A completed enumeration certifies "none".
SolveResult solve_sis_lattice(const SisInstance& inst, const LatticeSolverOptions& options = {});

SolveResult solve(const SisInstance& inst, Solver solver);

/// Siegel bound c_S = (mM)^{n/(m-n)} and beta_n = (2 n^2 Q)^{1/n} with M = Q = bound.
struct SiegelReport {
  std::size_t n = 0, m = 0;
  Integer bound;
  double c_s = 0;
  double beta_n = 0;
  Integer feasible_at;  // floor(c_S), exact
  std::optional<std::int64_t> beta;
  std::optional<bool> beta_exceeds_beta_n;  // beta^n > 2 n^2 Q, exact
};

// Throws DomainError when m <= n or bound < 1.
SiegelReport siegel_report(std::size_t n, std::size_t m, const Integer& bound,
                           std::optional<std::int64_t> beta = std::nullopt);

// ceil(beta_n) + 1 for Q, exact.
std::int64_t default_beta(std::size_t n, const Integer& modulus);

struct SuccessProfile {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0;
  double wilson_low = 0;  // 95% Wilson score interval
  double wilson_high = 0;
  double seconds = 0;
  // c0 = ln(1/rate) / ln(n); 0 when every trial succeeded, +inf when none did.
  double c0 = 0;
};

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);
double measured_c0(double rate, std::size_t n);

using SolverFn = std::function<SolveResult(const SisInstance&)>;
using InstanceFn = std::function<SisInstance(std::size_t trial)>;

SuccessProfile oracle_success_profile(const SolverFn& solver, const InstanceFn& instances, std::size_t trials);

}  // namespace sisz::sis
