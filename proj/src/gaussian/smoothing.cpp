#include <algorithm>
#include <cmath>
#include <limits>

#include "sisz/errors.hpp"
#include "sisz/gaussian.hpp"
#include "sisz/simd/kernels.hpp"

namespace sisz::gaussian {

DualPointSet::DualPointSet(const lattice::LatticeBasis& basis, double cutoff_radius, std::uint64_t node_budget)
    : dim_(basis.dim()), cutoff_(cutoff_radius), shortest_(std::numeric_limits<double>::infinity()) {
  if (!(cutoff_radius > 0) || !std::isfinite(cutoff_radius)) throw DomainError("dual point set: bad cutoff radius");
  // Dual vectors are D c / det with D = adj(B)^T integral.
  const IntegerMatrix scaled = lattice::scaled_dual_basis(basis);
  const double det = std::fabs(basis.determinant().get_d());
  const double det2 = det * det;
  const double limit = cutoff_radius * cutoff_radius * det2;
  std::vector<double> d;
  d.reserve(dim_ * dim_);
  for (const Integer& v : scaled.data()) d.push_back(v.get_d());

  const lattice::Enumerator enumerator(scaled);
  const auto stats = enumerator.run(
      limit,
      [&](std::span<const std::int64_t> c, double) {
        double s2 = 0;
        bool zero = true;
        for (std::size_t r = 0; r < dim_; ++r) {
          double x = 0;
          for (std::size_t k = 0; k < dim_; ++k) x += d[r * dim_ + k] * static_cast<double>(c[k]);
          s2 += x * x;
          zero = zero && c[r] == 0;
        }
        if (!zero && s2 <= limit) squared_.push_back(s2 / det2);
        return true;
      },
      node_budget);
  if (stats.budget_exhausted) throw CapabilityError("dual point set: enumeration budget exceeded; lower the cutoff");
  if (!squared_.empty()) shortest_ = std::sqrt(*std::min_element(squared_.begin(), squared_.end()));
}

double DualPointSet::mass(double s) const {
  return simd::active_kernels().gaussian_mass(squared_, kPi * s * s);
}

double DualPointSet::truncation_bound(double s) const {
  // rho(s L* \ sR B) <= F rho(s L*) = F (1 + inner + tail), solved for tail.
  const double f = banaszczyk_factor(s * cutoff_ / std::sqrt(static_cast<double>(dim_)), dim_);
  if (!(f < 1)) return std::numeric_limits<double>::infinity();
  return f * (1 + mass(s)) / (1 - f);
}

DualMass dual_gaussian_mass(const lattice::LatticeBasis& basis, double s, double cutoff_radius) {
  if (!(s > 0)) throw DomainError("dual_gaussian_mass: s must be positive");
  const DualPointSet points(basis, cutoff_radius);
  if (points.size() == 0) throw DomainError("dual_gaussian_mass: cutoff below lambda_1 of the dual lattice");
  return {points.mass(s), points.truncation_bound(s), points.size()};
}

std::string to_string(SmoothingMethod method) {
  return method == SmoothingMethod::analytic_bound ? "analytic-bound" : "truncated-sum-bisection";
}

double log_smoothing_argument(std::size_t n, double log_eps) {
  return std::log(2.0 * static_cast<double>(n)) + std::log1p(std::exp(log_eps)) - log_eps;
}

namespace {

// Smallest c (on a 1e-3 grid) with banaszczyk_factor(c, n) <= target.
double window_for(double target, std::size_t n) {
  double c = 1.0 / std::sqrt(2.0 * kPi) + 0.1;
  while (banaszczyk_factor(c, n) > target) c += 1e-3;
  return c;
}

}  // namespace

SmoothingEstimate smoothing_estimate(const lattice::LatticeBasis& basis, double eps, const SmoothingOptions& options) {
  if (!(eps > 0 && eps < 1)) throw DomainError("smoothing_estimate: eps must lie in (0, 1)");
  const std::size_t n = basis.dim();
  SmoothingEstimate out;
  out.eps = eps;
  out.lambda_n = options.lambda_n ? *options.lambda_n
                                  : std::sqrt(lattice::successive_minima(basis, n).squared.back().get_d());

  // Lower bound lambda_n / n: transference plus one shortest dual pair of mass
  // 2 e^{-pi} > eps. The upper bound holds for every eps.
  out.analytic_lower = eps < std::exp(-kPi) ? out.lambda_n / static_cast<double>(n) : 0.0;
  out.analytic_upper = std::sqrt(log_smoothing_argument(n, std::log(eps))) * out.lambda_n;
  out.lower = out.analytic_lower;
  out.upper = out.analytic_upper;

  const IntegerMatrix scaled = lattice::scaled_dual_basis(basis);
  const double det = std::fabs(basis.determinant().get_d());
  out.dual_lambda_1 = std::sqrt(lattice::successive_minima(scaled, 1).squared.front().get_d()) / det;

  // The pair +-z with |z| = lambda_1(L*) alone has mass eps at this scale.
  const double pair_scale = std::sqrt(std::log(2.0 / eps) / kPi) / out.dual_lambda_1;
  out.lower = std::max(out.lower, pair_scale);
  if (!options.bisect || out.lower >= out.upper) return out;

  // Cutoff such that the omitted tail is negligible at every scale >= lower.
  const double c = window_for(1e-6 * eps, n);
  const double cutoff = c * std::sqrt(static_cast<double>(n)) / out.lower;
  std::optional<DualPointSet> points;
  try {
    points.emplace(basis, cutoff, options.node_budget);
  } catch (const CapabilityError&) {
    return out;
  }

  double lo = out.lower;
  double hi = out.upper;
  for (int iter = 0; iter < 200 && hi - lo > options.relative_width * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double inner = points->mass(mid);
    if (inner > eps) {
      lo = mid;
    } else if (inner + points->truncation_bound(mid) <= eps) {
      hi = mid;
    } else {
      break;
    }
  }
  out.lower = lo;
  out.upper = hi;
  out.method = SmoothingMethod::truncated_sum_bisection;
  return out;
}

std::string to_string(EtaCertification c) {
  switch (c) {
    case EtaCertification::inside:
      return "certified";
    case EtaCertification::outside:
      return "outside";
    case EtaCertification::uncertified:
      return "uncertified";
  }
  return "uncertified";
}

EtaCertification certify_eta_tilde(double value, const SmoothingEstimate& estimate) {
  if (value >= 2 * estimate.upper && value <= 4 * estimate.lower) return EtaCertification::inside;
  if (value < 2 * estimate.lower || value > 4 * estimate.upper) return EtaCertification::outside;
  return EtaCertification::uncertified;
}

}  // namespace sisz::gaussian
