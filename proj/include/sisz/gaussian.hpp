#pragma once

// Gaussians in the rho_sigma convention: rho_{sigma,c}(x) = exp(-pi |x - c|^2 / sigma^2),
// which is a normal distribution with standard deviation sigma / sqrt(2 pi).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sisz/arith.hpp"
#include "sisz/enumeration.hpp"
#include "sisz/lattice.hpp"
#include "sisz/rng.hpp"

namespace sisz::gaussian {

using sisz::to_string;

inline constexpr double kPi = 3.14159265358979323846;

class GaussianSpec {
 public:
  // Throws DomainError unless sigma is finite and positive.
  explicit GaussianSpec(double sigma, std::vector<double> center = {});

  double sigma() const { return sigma_; }
  double std_dev() const { return std_dev_; }  // sigma / sqrt(2 pi)
  // Empty means the origin.
  const std::vector<double>& center() const { return center_; }
  double center(std::size_t i) const { return center_.empty() ? 0.0 : center_[i]; }

 private:
  double sigma_;
  double std_dev_;
  std::vector<double> center_;
};

std::vector<double> sample_continuous(const GaussianSpec& spec, std::size_t dim, Rng& rng);

struct LinearCombination {
  std::vector<double> sum;  // S = sum_j a_j x_j
  double norm = 0;
  double bound = 0;  // sqrt(2n) * sigma * |a|_2
  bool bound_ok = false;
};

// samples are n-dimensional draws from D_sigma, one per coefficient.
LinearCombination linear_combination_bound_check(const std::vector<std::int64_t>& coeffs,
                                                 const std::vector<std::vector<double>>& samples, double sigma);

struct CosetOptions {
  double tail = 6.0;                        // window radius in units of std_dev * sqrt(n)
  std::uint64_t point_budget = 10'000'000;  // enumeration nodes per draw
  std::optional<double> lambda_n;           // computed exactly when absent
};

struct CosetPoint {
  std::vector<double> point;  // x = B c + shift
  IntVec coeffs;              // c, so x - shift is in the lattice exactly
};

/// Discrete Gaussian on a lattice coset L + y by exhaustive enumeration of
/// the window around the center, followed by a categorical draw.
class CosetSampler {
 public:
  CosetSampler(const lattice::LatticeBasis& basis, GaussianSpec spec, CosetOptions options = {});

  // Throws CapabilityError when the window holds more points than the budget.
  CosetPoint sample(const std::vector<double>& shift, Rng& rng) const;

  // Upper bound on the probability mass of L + y lying outside the window,
  // relative to the mass inside it, from the most recent draw.
  double last_truncation_bound() const { return last_truncation_; }
  std::size_t last_support_size() const { return last_support_; }
  // sigma below lambda_n: the discrete distribution is far from smooth.
  bool below_lambda_n() const { return below_lambda_n_; }
  double window_radius() const { return radius_; }

 private:
  lattice::LatticeBasis basis_;
  GaussianSpec spec_;
  CosetOptions options_;
  lattice::Enumerator enumerator_;
  std::vector<double> basis_double_;  // row-major
  double radius_;
  double tail_factor_;    // Banaszczyk factor of the window, +inf when uninformative
  double lattice_mass_;   // rho_sigma(L) restricted to the window around 0
  bool below_lambda_n_;
  mutable double last_truncation_ = 0;
  mutable std::size_t last_support_ = 0;
};

CosetPoint sample_coset_discrete(const lattice::LatticeBasis& basis, const std::vector<double>& shift,
                                 const GaussianSpec& spec, Rng& rng, const CosetOptions& options = {});

// Banaszczyk's tail factor (c sqrt(2 pi e) exp(-pi c^2))^n: for c >= 1/sqrt(2 pi),
// rho(L \ c sqrt(n) B) <= factor * rho(L). Returns +inf below the threshold.
double banaszczyk_factor(double c, std::size_t n);

/// Squared lengths of the nonzero dual vectors within a cutoff radius, kept so
/// the dual Gaussian mass can be evaluated at many scales.
class DualPointSet {
 public:
  // Throws CapabilityError when enumeration exceeds the node budget.
  DualPointSet(const lattice::LatticeBasis& basis, double cutoff_radius, std::uint64_t node_budget = 50'000'000);

  std::size_t dim() const { return dim_; }
  double cutoff() const { return cutoff_; }
  std::size_t size() const { return squared_.size(); }
  const std::vector<double>& squared_norms() const { return squared_; }
  double shortest() const { return shortest_; }  // lambda_1(L*) if within the cutoff, else +inf

  // Sum of rho_{1/s} over the stored points: a lower bound on rho_{1/s}(L* \ {0}).
  double mass(double s) const;
  // Upper bound on the omitted tail at scale s; +inf when no bound applies.
  double truncation_bound(double s) const;

 private:
  std::size_t dim_;
  double cutoff_;
  double shortest_;
  std::vector<double> squared_;
};

struct DualMass {
  double mass = 0;              // lower bound of rho_{1/s}(L* \ {0})
  double truncation_bound = 0;  // mass <= true <= mass + truncation_bound
  std::size_t points = 0;
};

DualMass dual_gaussian_mass(const lattice::LatticeBasis& basis, double s, double cutoff_radius);

enum class SmoothingMethod { analytic_bound, truncated_sum_bisection };
std::string to_string(SmoothingMethod method);

struct SmoothingOptions {
  bool bisect = true;
  double relative_width = 1e-3;  // stop once (upper - lower) <= relative_width * upper
  std::uint64_t node_budget = 50'000'000;
  std::optional<double> lambda_n;  // computed exactly when absent
};

struct SmoothingEstimate {
  double eps = 0;
  double lower = 0;  // certified: eta_eps >= lower
  double upper = 0;  // certified: eta_eps <= upper
  SmoothingMethod method = SmoothingMethod::analytic_bound;
  double lambda_n = 0;
  double dual_lambda_1 = 0;   // lambda_1(L*)
  double analytic_lower = 0;  // lambda_n / n, or 0 when eps >= e^{-pi}
  double analytic_upper = 0;  // sqrt(ln(2n(1 + 1/eps))) * lambda_n
  double estimate() const { return 0.5 * (lower + upper); }
};

// ln(2n(1 + 1/eps)) from ln(eps), usable for eps far below double range.
double log_smoothing_argument(std::size_t n, double log_eps);

SmoothingEstimate smoothing_estimate(const lattice::LatticeBasis& basis, double eps, const SmoothingOptions& options = {});

enum class EtaCertification { inside, outside, uncertified };
std::string to_string(EtaCertification c);

struct EtaTilde {
  double value = 0;
  std::string provenance;  // "manual" or "schedule:k"
  EtaCertification certification = EtaCertification::uncertified;
};

// Whether value lies in [2 eta, 4 eta] for every eta inside the estimate's bracket.
EtaCertification certify_eta_tilde(double value, const SmoothingEstimate& estimate);

}  // namespace sisz::gaussian
