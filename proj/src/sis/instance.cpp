#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "sisz/errors.hpp"
#include "sisz/io.hpp"
#include "sisz/sis.hpp"

namespace sisz::sis {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::random_uniform:
      return "random-uniform";
    case Provenance::from_reduction:
      return "from-reduction";
    case Provenance::planted:
      return "planted";
    case Provenance::file:
      return "file";
  }
  return "file";
}

SisInstance::SisInstance(IntegerMatrix a, std::int64_t modulus, std::int64_t beta, Provenance provenance)
    : a_(std::move(a)), modulus_(modulus), beta_(beta), provenance_(provenance) {
  if (a_.cols() <= a_.rows()) throw DomainError("SIS instance needs m > n");
  if (modulus_ < 1) throw DomainError("SIS instance needs Q >= 1");
  if (beta_ < 0) throw DomainError("SIS instance needs beta >= 0");
  for (const Integer& v : a_.data())
    if (v < 0 || v >= modulus_) throw DomainError("SIS instance entry outside {0..Q-1}: " + sisz::to_string(v));
}

std::string format_instance(const SisInstance& inst) {
  std::ostringstream out;
  out << inst.n() << ' ' << inst.m() << ' ' << inst.modulus() << ' ' << inst.beta() << '\n';
  write_matrix(out, inst.matrix());
  return out.str();
}

SisInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string tok[4];
  for (auto& t : tok)
    if (!(in >> t)) throw ParseError("instance header must be \"n m Q beta\"");
  const Integer n = parse_integer(tok[0]);
  const Integer m = parse_integer(tok[1]);
  const std::int64_t q = to_int64(parse_integer(tok[2]));
  const std::int64_t beta = to_int64(parse_integer(tok[3]));
  IntegerMatrix a = read_integer_matrix(in);
  if (a.rows() != n || a.cols() != m) throw ParseError("instance header dimensions do not match the matrix");
  std::string extra;
  if (in >> extra) throw ParseError("trailing data after instance: " + extra);
  return SisInstance(std::move(a), q, beta, Provenance::file);
}

SisInstance random_instance(std::size_t n, std::size_t m, std::int64_t modulus, std::int64_t beta, Rng& rng) {
  if (modulus < 1) throw DomainError("random_instance: Q must be >= 1");
  IntegerMatrix a(n, m);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c) a(r, c) = static_cast<long>(rng.uniform_int(0, modulus - 1));
  return SisInstance(std::move(a), modulus, beta, Provenance::random_uniform);
}

SisInstance planted_instance(std::size_t n, std::size_t m, std::int64_t modulus, std::int64_t beta, Rng& rng) {
  SisInstance base = random_instance(n, m, modulus, beta, rng);
  IntegerMatrix a = base.matrix();
  a.set_column(1, a.column(0));
  return SisInstance(std::move(a), modulus, beta, Provenance::planted);
}

std::string to_string(Solver s) { return s == Solver::brute_force ? "brute-force" : "kernel-lll-enum"; }

Solver parse_solver(const std::string& name) {
  if (name == "brute-force" || name == "bruteforce" || name == "brute") return Solver::brute_force;
  if (name == "lattice" || name == "kernel-lll-enum") return Solver::kernel_lll_enum;
  throw DomainError("unknown solver: " + name);
}

IntVec sign_canonical(IntVec z) {
  for (const Integer& v : z) {
    if (v == 0) continue;
    if (v < 0)
      for (Integer& w : z) w = -w;
    break;
  }
  return z;
}

VerifyReport verify_solution(const SisInstance& inst, const IntVec& z) {
  VerifyReport r;
  r.length_ok = z.size() == inst.m();
  if (!r.length_ok) return r;
  r.nonzero = !is_zero(z);
  r.kernel = is_zero(inst.matrix() * z);
  r.linf = max_abs(z);
  r.norm_bound = r.linf <= inst.beta();
  return r;
}

SolveResult solve(const SisInstance& inst, Solver solver) {
  return solver == Solver::brute_force ? solve_sis_bruteforce(inst) : solve_sis_lattice(inst);
}

SiegelReport siegel_report(std::size_t n, std::size_t m, const Integer& bound, std::optional<std::int64_t> beta) {
  if (m <= n) throw DomainError("siegel_report: m must exceed n");
  if (bound < 1) throw DomainError("siegel_report: bound must be >= 1");
  SiegelReport r;
  r.n = n;
  r.m = m;
  r.bound = bound;
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  r.c_s = std::exp(nd / (md - nd) * std::log(md * bound.get_d()));
  r.beta_n = std::exp(std::log(2.0 * nd * nd * bound.get_d()) / nd);
  Integer mm = Integer(static_cast<unsigned long>(m)) * bound;
  Integer pow_n;
  mpz_pow_ui(pow_n.get_mpz_t(), mm.get_mpz_t(), n);
  r.feasible_at = floor_root(pow_n, static_cast<unsigned>(m - n));
  if (beta) {
    r.beta = beta;
    Integer b = static_cast<long>(*beta);
    Integer bn;
    mpz_pow_ui(bn.get_mpz_t(), b.get_mpz_t(), n);
    r.beta_exceeds_beta_n = *beta > 0 && bn > 2 * Integer(static_cast<unsigned long>(n * n)) * bound;
  }
  return r;
}

std::int64_t default_beta(std::size_t n, const Integer& modulus) {
  const Integer arg = 2 * Integer(static_cast<unsigned long>(n * n)) * modulus;
  return to_int64(ceil_root(arg, static_cast<unsigned>(n))) + 1;
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1 + z2 / nt;
  const double center = (p + z2 / (2 * nt)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nt + z2 / (4 * nt * nt)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double measured_c0(double rate, std::size_t n) {
  if (rate >= 1) return 0;
  if (rate <= 0) return std::numeric_limits<double>::infinity();
  if (n < 2) return 0;
  return std::log(1 / rate) / std::log(static_cast<double>(n));
}

SuccessProfile oracle_success_profile(const SolverFn& solver, const InstanceFn& instances, std::size_t trials) {
  if (trials == 0) throw DomainError("oracle_success_profile: trials must be >= 1");
  SuccessProfile p;
  p.trials = trials;
  std::size_t n = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < trials; ++t) {
    const SisInstance inst = instances(t);
    n = inst.n();
    if (inst.beta() == 0) continue;
    const SolveResult r = solver(inst);
    if (r.solution && verify_solution(inst, r.solution->z).passed()) ++p.successes;
  }
  p.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  p.rate = static_cast<double>(p.successes) / static_cast<double>(trials);
  std::tie(p.wilson_low, p.wilson_high) = wilson_interval(p.successes, trials);
  p.c0 = measured_c0(p.rate, n);
  return p;
}

}  // namespace sisz::sis
