#include <cmath>

#include "sisz/errors.hpp"
#include "sisz/io.hpp"
#include "sisz/reduction.hpp"

namespace sisz::reduction {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::success:
      return "success";
    case Outcome::oracle_failed:
      return "oracle-failed";
    case Outcome::zero_output:
      return "zero-output";
    case Outcome::aborted:
      return "aborted";
  }
  return "aborted";
}

std::uint64_t matrix_hash(const IntegerMatrix& a) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : format_matrix(a)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

IntegerMatrix build_A(const std::vector<RatVec>& coefficients, const Integer& modulus) {
  if (coefficients.empty()) throw DomainError("build_A: no columns");
  const std::size_t n = coefficients.front().size();
  IntegerMatrix a(n, coefficients.size());
  const Rational q(modulus);
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    if (coefficients[j].size() != n) throw DomainError("build_A: ragged coefficient vectors");
    for (std::size_t i = 0; i < n; ++i) {
      const Rational& k = coefficients[j][i];
      if (k < 0 || k >= 1) throw DomainError("build_A: point outside P(B)");
      a(i, j) = floor(q * k);
    }
  }
  return a;
}

IntegerMatrix build_A(const lattice::LatticeBasis& basis, const std::vector<RatVec>& ys, const Integer& modulus) {
  std::vector<RatVec> coeffs;
  coeffs.reserve(ys.size());
  for (const RatVec& y : ys) {
    if (y.size() != basis.dim()) throw DomainError("build_A: dimension mismatch");
    coeffs.push_back(basis.inverse() * y);
  }
  return build_A(coeffs, modulus);
}

namespace {

bool a_in_range(const IntegerMatrix& a, const Integer& modulus) {
  for (const Integer& v : a.data())
    if (v < 0 || v >= modulus) return false;
  return true;
}

// Q^2 |y - B a / Q|^2 = |Q y - B a|^2 <= n^3 M^2 for every column.
bool yz_bound(const lattice::LatticeBasis& basis, const std::vector<RatVec>& ys, const IntegerMatrix& a,
              const ReductionConfig& config) {
  const std::size_t n = basis.dim();
  const Integer nn(static_cast<unsigned long>(n));
  const Rational limit(nn * nn * nn * config.bound * config.bound);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    const IntVec ba = basis.matrix() * a.column(j);
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Rational d = Rational(config.modulus) * ys[j][i] - Rational(ba[i]);
      s += d * d;
    }
    if (s > limit) return false;
  }
  return true;
}

}  // namespace

Trial short_vectors(const lattice::LatticeBasis& basis, const ReductionConfig& config, std::uint64_t trial_seed,
                    std::uint64_t index, const TrialContext& context) {
  validate(config);
  const std::size_t n = basis.dim();
  if (n != config.n) throw DomainError("short_vectors: basis dimension differs from config n");
  if (basis.entry_bound() > config.bound) throw DomainError("short_vectors: basis entries exceed M");

  Trial t;
  t.index = index;
  t.seed = trial_seed;
  Rng rng(trial_seed);
  const gaussian::GaussianSpec spec(config.eta.value);

  // Steps 1-2: x_j from D_eta, y_j = x_j mod P(B) exactly.
  std::vector<RatVec> coefficients;
  for (std::size_t j = 0; j < config.m; ++j) {
    t.x.push_back(gaussian::sample_continuous(spec, n, rng));
    lattice::ParallelepipedPoint p = lattice::reduce_mod_parallelepiped(basis, t.x.back());
    t.y.push_back(std::move(p.y));
    t.floor_kappa.push_back(std::move(p.floor_coeffs));
    coefficients.push_back(std::move(p.coefficients));
  }

  // Step 3.
  t.a = build_A(coefficients, config.modulus);
  t.a_hash = matrix_hash(t.a);
  t.checks.a_in_range = a_in_range(t.a, config.modulus);
  t.checks.yz_bound = yz_bound(basis, t.y, t.a, config);
  if (!t.checks.a_in_range) {
    t.diagnostic = "A has an entry outside C_Q";
    return t;
  }

  // Step 4.
  if (!config.oracle) {
    t.outcome = Outcome::oracle_failed;
    t.diagnostic = "oracle disabled";
    return t;
  }
  const sis::SisInstance inst(t.a, to_int64(config.modulus), config.beta, sis::Provenance::from_reduction);
  sis::SolveResult solved;
  try {
    solved = sis::solve(inst, *config.oracle);
  } catch (const CapabilityError& e) {
    t.outcome = Outcome::oracle_failed;
    t.diagnostic = e.what();
    return t;
  }
  if (!solved.solution || !sis::verify_solution(inst, solved.solution->z).passed()) {
    t.outcome = Outcome::oracle_failed;
    t.diagnostic = solved.exhaustive ? "no solution exists" : "oracle found no solution";
    return t;
  }
  const IntVec& r = solved.solution->z;
  t.r = r;

  // Step 5: v = sum r_j (y_j - x_j) = -B sum r_j c_j, where y_j - x_j = -B c_j.
  std::vector<IntVec> offsets = t.floor_kappa;
  if (config.order == Order::analysis) {
    // Resample x_j from D_{L + y_j, eta} after the oracle call.
    gaussian::CosetOptions opt;
    opt.lambda_n = context.lambda_n;
    const gaussian::CosetSampler sampler(basis, spec, opt);
    for (std::size_t j = 0; j < config.m; ++j) {
      const gaussian::CosetPoint p = sampler.sample(to_double(t.y[j]), rng);
      t.x[j] = p.point;
      offsets[j] = p.coeffs;  // x_j = B c_j + y_j, so y_j - x_j = -B c_j
    }
    t.floor_kappa = offsets;
  }
  IntVec coeffs(n, Integer(0));
  for (std::size_t j = 0; j < config.m; ++j) {
    if (r[j] == 0) continue;
    for (std::size_t i = 0; i < n; ++i) coeffs[i] -= r[j] * offsets[j][i];
  }
  t.v_coeffs = coeffs;
  t.v = basis.combine(coeffs);
  const Integer v2 = squared_norm(t.v);
  t.v_norm = std::sqrt(v2.get_d());

  const std::optional<IntVec> member = lattice::lattice_membership(basis, t.v);
  t.checks.membership = member && *member == coeffs && basis.combine(coeffs) == t.v;
  if (context.lambda_n_squared) {
    const double bound = norm_bound_factor(n, config.m, config.beta) * std::sqrt(context.lambda_n_squared->get_d());
    t.checks.norm_bound = t.v_norm <= bound;
  }
  t.outcome = v2 == 0 ? Outcome::zero_output : Outcome::success;
  return t;
}

}  // namespace sisz::reduction
