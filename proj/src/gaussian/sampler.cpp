#include <algorithm>
#include <cmath>
#include <limits>

#include "sisz/errors.hpp"
#include "sisz/gaussian.hpp"
#include "sisz/simd/kernels.hpp"

namespace sisz::gaussian {

GaussianSpec::GaussianSpec(double sigma, std::vector<double> center)
    : sigma_(sigma), std_dev_(sigma / std::sqrt(2.0 * kPi)), center_(std::move(center)) {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw DomainError("gaussian: sigma must be finite and positive");
}

std::vector<double> sample_continuous(const GaussianSpec& spec, std::size_t dim, Rng& rng) {
  if (dim == 0) throw DomainError("sample_continuous: dim must be >= 1");
  if (!spec.center().empty() && spec.center().size() != dim)
    throw DomainError("sample_continuous: center dimension mismatch");
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = spec.center(i) + spec.std_dev() * rng.normal();
  return x;
}

LinearCombination linear_combination_bound_check(const std::vector<std::int64_t>& coeffs,
                                                 const std::vector<std::vector<double>>& samples, double sigma) {
  if (coeffs.size() != samples.size() || samples.empty())
    throw DomainError("linear_combination_bound_check: one sample per coefficient required");
  const std::size_t n = samples.front().size();
  LinearCombination out;
  out.sum.assign(n, 0.0);
  double a2 = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (samples[j].size() != n) throw DomainError("linear_combination_bound_check: ragged samples");
    const double a = static_cast<double>(coeffs[j]);
    a2 += a * a;
    for (std::size_t i = 0; i < n; ++i) out.sum[i] += a * samples[j][i];
  }
  double s2 = 0;
  for (double v : out.sum) s2 += v * v;
  out.norm = std::sqrt(s2);
  out.bound = std::sqrt(2.0 * static_cast<double>(n)) * sigma * std::sqrt(a2);
  out.bound_ok = out.norm <= out.bound;
  return out;
}

double banaszczyk_factor(double c, std::size_t n) {
  if (!(c >= 1.0 / std::sqrt(2.0 * kPi))) return std::numeric_limits<double>::infinity();
  const double per_dim = std::log(c) + 0.5 * std::log(2.0 * kPi * std::exp(1.0)) - kPi * c * c;
  return std::exp(static_cast<double>(n) * per_dim);
}

namespace {

std::vector<double> row_major(const IntegerMatrix& m) {
  std::vector<double> out;
  out.reserve(m.rows() * m.cols());
  for (const Integer& v : m.data()) out.push_back(v.get_d());
  return out;
}

}  // namespace

CosetSampler::CosetSampler(const lattice::LatticeBasis& basis, GaussianSpec spec, CosetOptions options)
    : basis_(basis),
      spec_(std::move(spec)),
      options_(options),
      enumerator_(basis.matrix()),
      basis_double_(row_major(basis.matrix())) {
  const std::size_t n = basis_.dim();
  if (!spec_.center().empty() && spec_.center().size() != n) throw DomainError("coset sampler: center dimension mismatch");
  if (!(options_.tail > 0)) throw DomainError("coset sampler: tail must be positive");
  radius_ = options_.tail * spec_.std_dev() * std::sqrt(static_cast<double>(n));
  tail_factor_ = banaszczyk_factor(options_.tail / std::sqrt(2.0 * kPi), n);

  double lambda_n = 0;
  if (options_.lambda_n) {
    lambda_n = *options_.lambda_n;
  } else if (n <= 8) {
    lambda_n = std::sqrt(lattice::successive_minima(basis_, n).squared.back().get_d());
  }
  below_lambda_n_ = spec_.sigma() < lambda_n;

  // rho_sigma(L) inside the window around the origin; bounds rho_sigma(L) from
  // below and, with the tail factor, from above.
  const double scale = kPi / (spec_.sigma() * spec_.sigma());
  double mass = 0;
  const auto stats = enumerator_.run(
      radius_ * radius_,
      [&](std::span<const std::int64_t> c, double) {
        double d2 = 0;
        for (std::size_t r = 0; r < n; ++r) {
          double x = 0;
          for (std::size_t k = 0; k < n; ++k) x += basis_double_[r * n + k] * static_cast<double>(c[k]);
          d2 += x * x;
        }
        mass += std::exp(-scale * d2);
        return true;
      },
      options_.point_budget);
  if (stats.budget_exhausted)
    throw CapabilityError("coset sampler: window exceeds the point budget; use a smaller sigma or dimension");
  lattice_mass_ = mass;
}

CosetPoint CosetSampler::sample(const std::vector<double>& shift, Rng& rng) const {
  const std::size_t n = basis_.dim();
  if (shift.size() != n) throw DomainError("coset sampler: shift dimension mismatch");

  // Enumerate c with |B c + shift - center| <= radius, i.e. target t = B^{-1}(center - shift).
  std::vector<double> offset(n);
  for (std::size_t i = 0; i < n; ++i) offset[i] = spec_.center(i) - shift[i];
  std::vector<double> target(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) target[i] += basis_.inverse()(i, j).get_d() * offset[j];

  auto collect = [&](double radius, std::vector<std::int64_t>& coeffs, std::vector<double>& dist2) {
    coeffs.clear();
    dist2.clear();
    const double r2 = radius * radius;
    const auto stats = enumerator_.run(
        r2, target,
        [&](std::span<const std::int64_t> c, double) {
          double d2 = 0;
          for (std::size_t r = 0; r < n; ++r) {
            double x = -offset[r];
            for (std::size_t k = 0; k < n; ++k) x += basis_double_[r * n + k] * static_cast<double>(c[k]);
            d2 += x * x;
          }
          if (d2 <= r2) {
            coeffs.insert(coeffs.end(), c.begin(), c.end());
            dist2.push_back(d2);
          }
          return true;
        },
        options_.point_budget);
    if (stats.budget_exhausted)
      throw CapabilityError("coset sampler: window exceeds the point budget; use a smaller sigma or dimension");
  };

  std::vector<std::int64_t> coeffs;
  std::vector<double> dist2;
  double radius = radius_;
  collect(radius, coeffs, dist2);
  if (dist2.empty()) {
    // Center far from the coset relative to sigma: widen until a point appears,
    // then take a full window beyond the nearest point.
    while (dist2.empty()) {
      radius *= 2;
      collect(radius, coeffs, dist2);
    }
    const double nearest = std::sqrt(*std::min_element(dist2.begin(), dist2.end()));
    radius = nearest + radius_;
    collect(radius, coeffs, dist2);
  }

  const double scale = kPi / (spec_.sigma() * spec_.sigma());
  std::vector<double> weights(dist2.size());
  simd::active_kernels().gaussian_weights(dist2, scale, weights);
  double total = 0;
  for (double& w : weights) {
    total += w;
    w = total;
  }
  if (!(total > 0)) throw CapabilityError("coset sampler: all window weights underflow");

  // Coset tail outside the window: rho((L + v) \ rB) <= 2 F rho(L), and
  // rho(L) <= window mass / (1 - F).
  const double f = radius == radius_ ? tail_factor_
                                     : banaszczyk_factor(radius / (spec_.sigma() * std::sqrt(static_cast<double>(n))), n);
  last_truncation_ = f < 1 ? 2 * f * (lattice_mass_ / (1 - f)) / total : std::numeric_limits<double>::infinity();
  last_support_ = dist2.size();

  const double u = rng.uniform01() * total;
  std::size_t pick = static_cast<std::size_t>(std::upper_bound(weights.begin(), weights.end(), u) - weights.begin());
  if (pick >= weights.size()) pick = weights.size() - 1;

  CosetPoint out;
  out.coeffs.resize(n);
  out.point.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) out.coeffs[k] = static_cast<long>(coeffs[pick * n + k]);
  for (std::size_t r = 0; r < n; ++r) {
    double x = shift[r];
    for (std::size_t k = 0; k < n; ++k) x += basis_double_[r * n + k] * static_cast<double>(coeffs[pick * n + k]);
    out.point[r] = x;
  }
  return out;
}

CosetPoint sample_coset_discrete(const lattice::LatticeBasis& basis, const std::vector<double>& shift,
                                 const GaussianSpec& spec, Rng& rng, const CosetOptions& options) {
  return CosetSampler(basis, spec, options).sample(shift, rng);
}

}  // namespace sisz::gaussian
