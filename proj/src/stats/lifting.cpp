#include <cmath>

#include "sisz/errors.hpp"
#include "sisz/sis.hpp"
#include "sisz/stats.hpp"

namespace sisz::stats {

std::string to_string(LiftScan s) {
  switch (s) {
    case LiftScan::not_run:
      return "not-run";
    case LiftScan::over_budget:
      return "over-budget";
    case LiftScan::no_violation:
      return "no-violation";
    case LiftScan::violation_found:
      return "violation-found";
  }
  return "not-run";
}

LiftReport lift_check(const IntegerMatrix& a, std::int64_t big_q, std::int64_t beta, std::int64_t q,
                      std::uint64_t budget) {
  if (q < 2) throw DomainError("lift_check: q must be >= 2");
  if (beta < 1) throw DomainError("lift_check: beta must be >= 1");
  for (const Integer& v : a.data())
    if (v < 0 || v >= big_q) throw DomainError("lift_check: entries must lie in {0..Q-1}");

  LiftReport rep;
  rep.threshold = Integer(static_cast<unsigned long>(a.cols())) * Integer(static_cast<long>(big_q - 1)) *
                  Integer(static_cast<long>(beta));
  rep.analytic = q > rep.threshold;

  const double space = std::pow(static_cast<double>(2 * beta + 1), static_cast<double>(a.cols()));
  if (space > static_cast<double>(budget)) {
    rep.scan = LiftScan::over_budget;
    return rep;
  }
  const bool stop_at_first = !rep.analytic;
  rep.scanned = sis::scan_canonical_box(a, beta, [&](auto z, auto az) {
    bool zero = true;
    for (std::int64_t v : az) {
      if (v % q != 0) return true;
      zero = zero && v == 0;
    }
    if (zero) return true;
    ++rep.violations;
    if (!rep.counterexample) {
      IntVec out(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) out[i] = static_cast<long>(z[i]);
      rep.counterexample = std::move(out);
    }
    return !stop_at_first;
  });
  rep.scan = rep.violations ? LiftScan::violation_found : LiftScan::no_violation;
  return rep;
}

}  // namespace sisz::stats
