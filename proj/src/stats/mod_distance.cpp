#include <cmath>

#include "sisz/errors.hpp"
#include "sisz/stats.hpp"

namespace sisz::stats {

ModDistanceReport exact_mod_distance(std::int64_t big_q, std::int64_t q) {
  if (big_q < 1 || q < 2) throw DomainError("exact_mod_distance: need Q >= 1 and q >= 2");
  ModDistanceReport r;
  r.big_q = big_q;
  r.q = q;
  r.t = big_q / q;
  r.r = big_q % q;
  r.delta_exact = Rational(r.r * (q - r.r), big_q * q);
  r.delta_exact.canonicalize();
  r.upper_bound = Rational(q, 4 * big_q);
  r.upper_bound.canonicalize();
  r.uniform = r.r == 0;
  return r;
}

MatrixModBound matrix_mod_distance_bound(std::int64_t n, std::int64_t m, std::int64_t big_q, std::int64_t q) {
  if (n < 1 || m < 1) throw DomainError("matrix_mod_distance_bound: need n, m >= 1");
  const ModDistanceReport single = exact_mod_distance(big_q, q);
  MatrixModBound out;
  if (single.uniform) return out;
  const Rational cells = Rational(Integer(static_cast<long>(n)) * Integer(static_cast<long>(m)));
  out.bound = cells * single.upper_bound;
  if (out.bound > 1) out.bound = 1;
  out.product_bound = cells * single.delta_exact;
  if (out.product_bound > 1) out.product_bound = 1;
  return out;
}

double log_uniformity_bound(std::size_t m, double log_eps) {
  return std::log(static_cast<double>(m)) + log_eps - std::log(2.0);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::incompatible:
      return "incompatible";
    case Verdict::compatible:
      return "compatible";
    case Verdict::inapplicable:
      return "inapplicable";
  }
  return "inapplicable";
}

IncompatibilityReport incompatibility_report(std::int64_t n, std::int64_t m, std::int64_t big_q, std::int64_t beta) {
  IncompatibilityReport rep;
  rep.n = n;
  rep.m = m;
  rep.big_q = big_q;
  rep.beta = beta;
  if (n <= 2 || m <= 2 || beta < 1 || big_q < 2) {
    rep.verdict = Verdict::inapplicable;
    rep.witnesses.push_back("proposition inapplicable: needs n > 2, m > 2, beta >= 1, Q >= 2");
    return rep;
  }
  const Integer nm = Integer(static_cast<long>(n)) * Integer(static_cast<long>(m));
  rep.lifting_threshold = Integer(static_cast<long>(m)) * Integer(static_cast<long>(big_q - 1)) * Integer(static_cast<long>(beta));
  rep.uniformity_slope = Rational(nm, 4 * Integer(static_cast<long>(big_q)));
  rep.uniformity_slope.canonicalize();
  rep.nondivisor_ceiling = Integer(static_cast<long>(big_q)) / nm;
  const std::string L = to_string(rep.lifting_threshold);
  const std::string Q = std::to_string(big_q);

  rep.witnesses.push_back("lifting needs q > m(Q-1)beta = " + L);

  // q dividing Q: every such q is at most Q.
  const bool divisor_ok = Integer(static_cast<long>(big_q)) > rep.lifting_threshold;
  rep.witnesses.push_back("q | Q: q <= Q = " + Q + (divisor_ok ? " > " : " <= ") + L);

  // q not dividing Q: uniformity needs q <= Q/(nm), the convention used for "much less than".
  bool nondivisor_ok = false;
  for (Integer q = rep.lifting_threshold + 1; q <= rep.nondivisor_ceiling; ++q) {
    if (q >= 2 && big_q % q.get_si() != 0) {
      nondivisor_ok = true;
      break;
    }
  }
  rep.witnesses.push_back("q !| Q: q <= Q/(nm) = " + to_string(Rational(Integer(static_cast<long>(big_q)), nm)) +
                          (nondivisor_ok ? " admits q > " : ", no integer q > ") + L);
  rep.verdict = divisor_ok || nondivisor_ok ? Verdict::compatible : Verdict::incompatible;
  return rep;
}

}  // namespace sisz::stats
