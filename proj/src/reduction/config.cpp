#include <cmath>

#include "sisz/errors.hpp"
#include "sisz/reduction.hpp"

namespace sisz::reduction {

std::size_t default_m(std::size_t n) { return (n + 1) * n; }

Integer default_modulus(std::size_t n, std::size_t m, const Integer& bound) {
  // ceil(n sqrt(m) M) = ceil(sqrt(n^2 m M^2))
  const Integer nn(static_cast<unsigned long>(n));
  const Integer arg = nn * nn * Integer(static_cast<unsigned long>(m)) * bound * bound;
  return ceil_root(arg, 2);
}

std::string to_string(Order o) { return o == Order::written ? "written" : "analysis"; }

void validate(const ReductionConfig& c) {
  if (c.n < 1) throw DomainError("reduction config: n must be >= 1");
  if (c.m != default_m(c.n)) throw DomainError("reduction config: m must equal (n+1)n");
  if (c.bound < 1) throw DomainError("reduction config: M must be >= 1");
  if (c.beta < 1) throw DomainError("reduction config: beta must be >= 1");
  const Integer nn(static_cast<unsigned long>(c.n));
  if (c.modulus * c.modulus < nn * nn * Integer(static_cast<unsigned long>(c.m)) * c.bound * c.bound)
    throw DomainError("reduction config: Q must be >= n sqrt(m) M");
  if (!(c.eta.value > 0) || !std::isfinite(c.eta.value)) throw DomainError("reduction config: eta must be positive");
}

ReductionConfig make_config(std::size_t n, const Integer& bound, double eta_tilde, std::uint64_t seed,
                            std::optional<Integer> modulus, std::optional<std::int64_t> beta) {
  ReductionConfig c;
  c.n = n;
  c.m = default_m(n);
  c.bound = bound;
  c.modulus = modulus ? *modulus : default_modulus(n, c.m, bound);
  c.beta = beta ? *beta : sis::default_beta(n, c.modulus);
  c.eta.value = eta_tilde;
  c.eta.provenance = "manual";
  c.seed = seed;
  validate(c);
  return c;
}

double norm_bound_factor(std::size_t n, std::size_t m, std::int64_t beta) {
  return 16.0 * std::sqrt(2.0) * static_cast<double>(beta) * std::sqrt(static_cast<double>(n * m)) *
         std::log2(static_cast<double>(n));
}

}  // namespace sisz::reduction
