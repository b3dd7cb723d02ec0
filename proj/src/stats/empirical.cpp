#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "sisz/errors.hpp"
#include "sisz/gaussian.hpp"
#include "sisz/simd/kernels.hpp"
#include "sisz/stats.hpp"

namespace sisz::stats {

namespace {

// 99% bound on |p_hat - p|_1 / 2 from P(|p_hat - p|_1 >= t) <= (2^k - 2) exp(-N t^2 / 2).
double tv_half_width(std::uint64_t domain, std::uint64_t trials) {
  const double log_states = static_cast<double>(domain) * std::log(2.0);
  const double t = std::sqrt(2.0 * (log_states + std::log(100.0)) / static_cast<double>(trials));
  return std::min(1.0, 0.5 * t);
}

}  // namespace

EmpiricalDistance distance_from_counts(const std::vector<std::uint64_t>& counts) {
  if (counts.empty()) throw DomainError("distance_from_counts: empty domain");
  EmpiricalDistance d;
  d.domain = counts.size();
  for (std::uint64_t c : counts) d.trials += c;
  if (d.trials == 0) throw DomainError("distance_from_counts: no samples");
  const double n = static_cast<double>(d.trials);
  const double u = 1.0 / static_cast<double>(d.domain);
  double sum = 0;
  for (std::uint64_t c : counts) sum += std::fabs(static_cast<double>(c) / n - u);
  d.estimate = std::min(1.0, 0.5 * sum);
  d.half_width = tv_half_width(d.domain, d.trials);
  d.bias_warning = d.trials < 10 * d.domain;
  return d;
}

EmpiricalDistance empirical_statistical_distance(const std::function<std::uint64_t()>& sampler, std::uint64_t domain,
                                                 std::uint64_t trials) {
  if (domain == 0 || trials == 0) throw DomainError("empirical_statistical_distance: empty domain or no trials");
  std::vector<std::uint64_t> counts(domain, 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t a = sampler();
    if (a >= domain) throw DomainError("empirical_statistical_distance: sample outside the domain");
    ++counts[a];
  }
  return distance_from_counts(counts);
}

std::string to_string(Channel c) { return c == Channel::gaussian ? "gaussian" : "exact-uniform"; }

UniformityResult column_uniformity_test(const lattice::LatticeBasis& basis, std::int64_t big_q, double eta_tilde,
                                        std::uint64_t trials, const UniformityOptions& options) {
  if (big_q < 1) throw DomainError("column_uniformity_test: Q must be >= 1");
  if (trials == 0) throw DomainError("column_uniformity_test: trials must be >= 1");
  const std::size_t n = basis.dim();
  const double cells_d = std::pow(static_cast<double>(big_q), static_cast<double>(n));
  if (cells_d > 9.0e15) throw CapabilityError("column_uniformity_test: Q^n too large to index");
  const std::uint64_t cells = static_cast<std::uint64_t>(cells_d);

  std::vector<double> inverse(n * n);
  std::vector<double> b(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      inverse[r * n + c] = basis.inverse()(r, c).get_d();
      b[r * n + c] = basis.matrix()(r, c).get_d();
    }

  std::optional<gaussian::GaussianSpec> spec;
  if (options.channel == Channel::gaussian) spec.emplace(eta_tilde);

  const bool table = cells <= options.table_limit;
  std::vector<std::uint64_t> counts(table ? cells : 0, 0);
  std::vector<std::vector<std::uint64_t>> marginal(table ? 0 : n, std::vector<std::uint64_t>(big_q, 0));
  std::unordered_map<std::int64_t, std::uint64_t> seen;

  Rng rng(options.seed, options.stream);
  const auto& kernels = simd::active_kernels();
  const std::size_t batch = std::max<std::size_t>(1, options.batch);
  std::vector<double> points(n * batch);
  std::vector<double> u(n);
  std::vector<std::int64_t> out(batch);
  for (std::uint64_t done = 0; done < trials;) {
    const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(batch, trials - done));
    for (std::size_t p = 0; p < count; ++p) {
      if (spec) {
        for (std::size_t i = 0; i < n; ++i) points[i * count + p] = spec->std_dev() * rng.normal();
      } else {
        for (std::size_t i = 0; i < n; ++i) u[i] = rng.uniform01();
        for (std::size_t i = 0; i < n; ++i) {
          double y = 0;
          for (std::size_t k = 0; k < n; ++k) y += b[i * n + k] * u[k];
          points[i * count + p] = y;
        }
      }
    }
    kernels.parallelepiped_cells(inverse, n, std::span<const double>(points.data(), n * count), count, big_q,
                                 std::span<std::int64_t>(out.data(), count));
    for (std::size_t p = 0; p < count; ++p) {
      const std::int64_t cell = out[p];
      if (table) {
        ++counts[static_cast<std::size_t>(cell)];
      } else {
        std::int64_t rest = cell;
        for (std::size_t i = 0; i < n; ++i) {
          ++marginal[i][static_cast<std::size_t>(rest % big_q)];
          rest /= big_q;
        }
        ++seen[cell];
      }
    }
    done += count;
  }

  UniformityResult result;
  result.channel = options.channel;
  if (table) {
    result.distance = distance_from_counts(counts);
  } else {
    MarginalReport rep;
    for (const auto& m : marginal) rep.marginals.push_back(distance_from_counts(m));
    for (const auto& [cell, c] : seen) rep.collisions += c * (c - 1) / 2;
    const double t = static_cast<double>(trials);
    rep.expected_collisions = t * (t - 1) / (2 * cells_d);
    result.marginal = std::move(rep);
  }
  return result;
}

double uniformity_null_band(const lattice::LatticeBasis& basis, std::int64_t big_q, std::uint64_t trials,
                            std::size_t replicates, double quantile, std::uint64_t seed) {
  if (replicates == 0 || !(quantile > 0 && quantile <= 1)) throw DomainError("uniformity_null_band: bad arguments");
  std::vector<double> values;
  values.reserve(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    UniformityOptions opt;
    opt.channel = Channel::exact_uniform;
    opt.seed = seed;
    opt.stream = r;
    const UniformityResult res = column_uniformity_test(basis, big_q, 1.0, trials, opt);
    if (!res.distance) throw CapabilityError("uniformity_null_band: Q^n too large to tabulate");
    values.push_back(res.distance->estimate);
  }
  std::sort(values.begin(), values.end());
  const std::size_t idx = static_cast<std::size_t>(std::ceil(quantile * static_cast<double>(replicates))) - 1;
  return values[std::min(idx, values.size() - 1)];
}

}  // namespace sisz::stats
