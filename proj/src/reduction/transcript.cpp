#include <cstdio>

#include "sisz/reduction.hpp"

namespace sisz::reduction {

namespace {

json int_json(const Integer& v) {
  if (v.fits_slong_p()) return json(static_cast<std::int64_t>(v.get_si()));
  return json(v.get_str());
}

json vec_json(const IntVec& v) {
  json out = json::array();
  for (const Integer& x : v) out.push_back(int_json(x));
  return out;
}

json matrix_rows(const IntegerMatrix& a) {
  json rows = json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(vec_json(a.row(r)));
  return rows;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

json to_json(const ReductionConfig& c) {
  return {{"n", c.n},
          {"m", c.m},
          {"M", int_json(c.bound)},
          {"Q", int_json(c.modulus)},
          {"beta", c.beta},
          {"eta", c.eta.value},
          {"eta_provenance", c.eta.provenance},
          {"eta_certification", gaussian::to_string(c.eta.certification)},
          {"oracle", c.oracle ? sis::to_string(*c.oracle) : std::string("none")},
          {"order", to_string(c.order)},
          {"seed", c.seed}};
}

json to_json(const Trial& t) {
  json x = json::array();
  for (const auto& v : t.x) x.push_back(v);
  json y = json::array();
  for (const auto& v : t.y) y.push_back(to_double(v));
  json fk = json::array();
  for (const auto& v : t.floor_kappa) fk.push_back(vec_json(v));
  json checks = {{"a_in_range", t.checks.a_in_range}, {"yz_bound", t.checks.yz_bound},
                 {"membership", t.checks.membership}};
  checks["norm_bound"] = t.checks.norm_bound ? json(*t.checks.norm_bound) : json(nullptr);
  json out = {{"index", t.index},
              {"seed", t.seed},
              {"x", x},
              {"y", y},
              {"floor_kappa", fk},
              {"A", matrix_rows(t.a)},
              {"A_hash", hex64(t.a_hash)},
              {"r", t.r ? vec_json(*t.r) : json(nullptr)},
              {"v_coeffs", t.v_coeffs ? vec_json(*t.v_coeffs) : json(nullptr)},
              {"v", t.v.empty() ? json(nullptr) : vec_json(t.v)},
              {"v_norm", t.v_norm},
              {"outcome", to_string(t.outcome)},
              {"checks", checks}};
  if (!t.diagnostic.empty()) out["diagnostic"] = t.diagnostic;
  return out;
}

json to_json(const EtaSchedule& s) {
  return {{"R_squared", int_json(s.r_squared)}, {"R", s.r},         {"eta_hat", s.eta_hat},
          {"alpha", s.alpha},                   {"K", s.k},         {"candidates", s.candidates}};
}

json transcript_json(const SivpRun& run) {
  json candidates = json::array();
  for (const CandidateRun& c : run.candidates) {
    candidates.push_back({{"eta", c.eta},
                          {"calls", c.calls},
                          {"successes", c.successes},
                          {"rank", c.rank},
                          {"max_norm", c.max_norm ? json(*c.max_norm) : json(nullptr)}});
  }
  json trials = json::array();
  for (const Trial& t : run.trials) trials.push_back(to_json(t));
  json vectors = json::array();
  for (const auto& v : run.result.vectors) vectors.push_back(vec_json(v.coords));
  json result = {{"success", run.result.success},
                 {"vectors", vectors},
                 {"max_norm", run.result.max_norm},
                 {"lambda_n_squared", int_json(run.result.lambda_n_squared)},
                 {"lambda_n", run.result.lambda_n},
                 {"achieved_factor", run.result.achieved_factor},
                 {"bound_factor", run.result.bound_factor},
                 {"best_candidate", run.best_candidate ? json(*run.best_candidate) : json(nullptr)}};
  return {{"tool", {{"name", "sisz"}, {"version", kVersion}}},
          {"config", to_json(run.config)},
          {"seed", run.config.seed},
          {"schedule", to_json(run.schedule)},
          {"c0", run.c0},
          {"budget_per_candidate", run.budget_per_candidate},
          {"calls", run.calls},
          {"successes", run.successes},
          {"candidates", candidates},
          {"trials", trials},
          {"result", result}};
}

std::string transcript_text(const SivpRun& run) { return transcript_json(run).dump(1) + "\n"; }

std::string csv_header() { return "n,m,M,Q,beta,eta,calls,successes,max_norm,lambda_n,factor"; }

std::string csv_row(const SivpRun& run) {
  const ReductionConfig& c = run.config;
  std::string row = std::to_string(c.n) + ',' + std::to_string(c.m) + ',' + c.bound.get_str() + ',' +
                    c.modulus.get_str() + ',' + std::to_string(c.beta) + ',';
  row += run.best_candidate ? format_double(run.candidates[*run.best_candidate].eta) : std::string();
  row += ',' + std::to_string(run.calls) + ',' + std::to_string(run.successes) + ',';
  row += run.result.success ? format_double(run.result.max_norm) : std::string();
  row += ',' + format_double(run.result.lambda_n) + ',';
  row += run.result.success ? format_double(run.result.achieved_factor) : std::string();
  return row;
}

}  // namespace sisz::reduction
