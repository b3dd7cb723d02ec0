#include <cmath>

#include "sisz/errors.hpp"
#include "sisz/reduction.hpp"

namespace sisz::reduction {

CollectResult collect_independent(const lattice::LatticeBasis& basis, const ReductionConfig& config,
                                  const CollectOptions& options, std::uint64_t first_index) {
  const std::size_t n = basis.dim();
  CollectResult out;
  SpanTracker span(n);
  for (std::uint64_t i = 0; i < options.max_calls && span.rank() < n; ++i) {
    const std::uint64_t index = first_index + i;
    Trial t = short_vectors(basis, config, derive_seed(config.seed, index), index, options.context);
    ++out.calls;
    if (t.outcome == Outcome::success) {
      ++out.successes;
      if (span.add(t.v)) {
        out.vectors.push_back({t.v, t.v_coeffs});
        if (span.rank() == n) out.successes_to_full_rank = out.successes;
      }
    }
    if (options.keep_trials) out.trials.push_back(std::move(t));
  }
  out.rank = span.rank();
  return out;
}

namespace {

double max_norm(const std::vector<lattice::LatticeVector>& vs) {
  Integer best = 0;
  for (const auto& v : vs) {
    const Integer s = squared_norm(v.coords);
    if (s > best) best = s;
  }
  return std::sqrt(best.get_d());
}

}  // namespace

SivpRun sivp_approximate(const lattice::LatticeBasis& basis, const ReductionConfig& config, const SivpOptions& options) {
  const std::size_t n = basis.dim();
  SivpRun run;
  run.config = config;
  run.schedule = eta_schedule(basis);
  if (options.eta) {
    if (!(*options.eta > 0) || !std::isfinite(*options.eta)) throw DomainError("sivp: eta must be positive");
    run.schedule.candidates = {*options.eta};
  }

  const lattice::SuccessiveMinima minima = lattice::successive_minima(basis, n);
  TrialContext context;
  context.lambda_n_squared = minima.squared.back();
  context.lambda_n = std::sqrt(minima.squared.back().get_d());

  if (options.c0) {
    run.c0 = *options.c0;
  } else if (config.oracle) {
    // Success rate of the oracle on uniform instances of the run's shape.
    const std::int64_t q = to_int64(config.modulus);
    const sis::Solver solver = *config.oracle;
    const sis::SuccessProfile profile = sis::oracle_success_profile(
        [solver](const sis::SisInstance& inst) { return sis::solve(inst, solver); },
        [&](std::size_t t) {
          Rng rng(derive_seed(config.seed, 0x70726f66696c65ULL), t);
          return sis::random_instance(n, config.m, q, config.beta, rng);
        },
        options.profile_trials);
    run.c0 = std::isfinite(profile.c0) ? profile.c0 : 0.0;
  }
  const double exponent = std::ceil(run.c0) + 2;
  run.budget_per_candidate =
      options.budget_multiplier * static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(n), exponent)));

  run.result.lambda_n_squared = minima.squared.back();
  run.result.lambda_n = *context.lambda_n;
  run.result.bound_factor = norm_bound_factor(n, config.m, config.beta);

  std::uint64_t next_index = 0;
  for (std::size_t k = 0; k < run.schedule.candidates.size(); ++k) {
    ReductionConfig cfg = config;
    cfg.eta.value = run.schedule.candidates[k];
    cfg.eta.provenance = options.eta ? "manual" : "schedule:" + std::to_string(k);
    CollectOptions opt;
    opt.max_calls = run.budget_per_candidate;
    opt.keep_trials = options.keep_trials;
    opt.context = context;
    CollectResult got = collect_independent(basis, cfg, opt, next_index);
    next_index += got.calls;
    run.calls += got.calls;
    run.successes += got.successes;

    CandidateRun cand{cfg.eta.value, got.calls, got.successes, got.rank, std::nullopt};
    if (got.rank == n) {
      cand.max_norm = max_norm(got.vectors);
      if (!run.result.success || *cand.max_norm < run.result.max_norm) {
        run.result.success = true;
        run.result.vectors = got.vectors;
        run.result.max_norm = *cand.max_norm;
        run.best_candidate = k;
      }
    }
    run.candidates.push_back(cand);
    for (Trial& t : got.trials) run.trials.push_back(std::move(t));
  }
  if (run.result.success) run.result.achieved_factor = run.result.max_norm / run.result.lambda_n;
  return run;
}

}  // namespace sisz::reduction
