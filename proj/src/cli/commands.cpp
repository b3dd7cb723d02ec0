#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sisz/cli.hpp"
#include "sisz/errors.hpp"
#include "sisz/gaussian.hpp"
#include "sisz/io.hpp"
#include "sisz/reduction.hpp"
#include "sisz/sis.hpp"
#include "sisz/stats.hpp"

namespace sisz::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kMaxSweepCells = 10'000;
constexpr std::uint64_t kBasisStream = 1;

json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

json rational_json(const Rational& v) { return json(to_string(v)); }

json vector_json(const IntVec& v) {
  json out = json::array();
  for (const Integer& x : v) out.push_back(integer_json(x));
  return out;
}

json header(const std::string& command, std::uint64_t seed) {
  return json{{"tool", "sisz"}, {"version", reduction::kVersion}, {"command", command}, {"seed", seed}};
}

void emit(const json& report, std::ostream& out) { out << report.dump(1) << '\n'; }

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Options common to every leaf command.
struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string config;

  std::uint64_t resolve_seed(std::ostream& err) {
    if (!seed) {
      seed = fresh_seed();
      err << "note: no --seed given, using " << *seed << '\n';
    }
    return *seed;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "64-bit seed; generated and reported when absent");
  app->add_option("--out", c.out, "output path");
  app->add_option("--config", c.config, "JSON file of option values; command-line flags take precedence");
}

void note_override(std::ostream& err, const std::string& flag, const std::string& value, const std::string& default_value,
                   const std::string& rule) {
  err << "note: " << flag << ' ' << value << " replaces the default " << default_value << " (" << rule << ")\n";
}

void write_or_print(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty())
    out << contents;
  else
    write_file(path, contents);
}

lattice::LatticeBasis load_basis(const std::string& path) {
  return lattice::LatticeBasis(parse_integer_matrix(read_file(path)));
}

// Appends "--key value" for every JSON key not already given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  std::string path;
  if (it != args.end() && it + 1 != args.end()) {
    path = *(it + 1);
  } else {
    for (const std::string& a : args)
      if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  if (path.empty()) return args;

  json cfg;
  try {
    cfg = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParseError("config " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw ParseError("config " + path + ": expected a JSON object");

  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  auto scalar = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) return format_double(v.get<double>());
    throw ParseError("config: unsupported value " + v.dump());
  };

  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (key == "config" || given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_array()) {
      extra.push_back(flag);
      for (const json& v : value) extra.push_back(scalar(v));
    } else {
      extra.push_back(flag);
      extra.push_back(scalar(value));
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

// ---- gen ----

struct GenArgs {
  Common common;
  std::string kind = "instance";
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::optional<std::int64_t> q;
  std::optional<std::int64_t> bound;
  std::optional<std::int64_t> beta;
  bool planted = false;
};

int cmd_gen(GenArgs& g, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = g.common.resolve_seed(err);
  json report = header("gen", seed);
  if (g.kind == "basis") {
    if (!g.bound) throw DomainError("gen basis: --M is required");
    Rng rng(seed, kBasisStream);
    const lattice::LatticeBasis b = lattice::random_basis(g.n, *g.bound, rng);
    const std::string text = format_matrix(b.matrix());
    if (g.common.out.empty()) {
      out << text;
      return kSuccess;
    }
    write_file(g.common.out, text);
    report["config"] = {{"kind", "basis"}, {"n", g.n}, {"M", *g.bound}, {"out", g.common.out}};
    report["result"] = {{"determinant", integer_json(b.determinant())}};
    emit(report, out);
    return kSuccess;
  }

  const std::size_t m = g.m.value_or(reduction::default_m(g.n));
  if (g.m && *g.m != reduction::default_m(g.n))
    note_override(err, "--m", std::to_string(m), "m = " + std::to_string(reduction::default_m(g.n)), "(n+1)n");
  std::int64_t q = 0;
  if (g.q) {
    q = *g.q;
  } else if (g.bound) {
    q = to_int64(reduction::default_modulus(g.n, m, Integer(static_cast<long>(*g.bound))));
  } else {
    throw DomainError("gen: give --Q or --M");
  }
  if (g.q && g.bound) {
    const Integer def = reduction::default_modulus(g.n, m, Integer(static_cast<long>(*g.bound)));
    if (def != q) note_override(err, "--Q", std::to_string(q), "Q = " + def.get_str(), "ceil(n sqrt(m) M)");
  }
  const std::int64_t def_beta = sis::default_beta(g.n, Integer(static_cast<long>(q)));
  if (g.beta && *g.beta != def_beta)
    note_override(err, "--beta", std::to_string(*g.beta), "beta = " + std::to_string(def_beta), "ceil(beta_n) + 1");
  const std::int64_t beta = g.beta.value_or(def_beta);

  Rng rng(seed, 0);
  const sis::SisInstance inst =
      g.planted ? sis::planted_instance(g.n, m, q, beta, rng) : sis::random_instance(g.n, m, q, beta, rng);
  const std::string text = sis::format_instance(inst);
  if (g.common.out.empty()) {
    out << text;
    return kSuccess;
  }
  write_file(g.common.out, text);
  report["config"] = {{"kind", "instance"}, {"n", g.n},        {"m", m},
                      {"Q", q},             {"beta", beta},     {"planted", g.planted},
                      {"out", g.common.out}};
  report["result"] = {{"provenance", sis::to_string(inst.provenance())}};
  emit(report, out);
  return kSuccess;
}

// ---- solve ----

struct SolveArgs {
  Common common;
  std::string instance;
  std::string solver = "lattice";
  std::optional<std::int64_t> beta;
  std::optional<std::uint64_t> budget;
};

json verify_json(const sis::VerifyReport& v) {
  return json{{"length_ok", v.length_ok}, {"nonzero", v.nonzero},        {"kernel", v.kernel},
              {"norm_bound", v.norm_bound}, {"linf", integer_json(v.linf)}, {"passed", v.passed()}};
}

int cmd_solve(SolveArgs& s, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = s.common.resolve_seed(err);
  sis::SisInstance inst = sis::parse_instance(read_file(s.instance));
  if (s.beta) {
    if (*s.beta != inst.beta())
      note_override(err, "--beta", std::to_string(*s.beta), "beta = " + std::to_string(inst.beta()), "instance file");
    inst = inst.with_beta(*s.beta);
  }
  if (inst.beta() < 1) throw DomainError("solve: beta must be >= 1");
  const sis::Solver solver = sis::parse_solver(s.solver);

  json report = header("solve", seed);
  report["config"] = {{"instance", s.instance}, {"solver", sis::to_string(solver)}, {"beta", inst.beta()},
                      {"n", inst.n()},          {"m", inst.m()},                    {"Q", inst.modulus()}};
  if (s.budget) report["config"]["budget"] = *s.budget;

  const auto start = Clock::now();
  json result;
  int code = kSuccess;
  try {
    sis::SolveResult r;
    if (solver == sis::Solver::brute_force) {
      sis::BruteForceOptions opt;
      if (s.budget) opt.budget = *s.budget;
      r = sis::solve_sis_bruteforce(inst, opt);
    } else {
      sis::LatticeSolverOptions opt;
      if (s.budget) opt.node_budget = *s.budget;
      r = sis::solve_sis_lattice(inst, opt);
    }
    result["work"] = r.work;
    result["exhaustive"] = r.exhaustive;
    if (r.solution) {
      result["status"] = "found";
      result["z"] = vector_json(r.solution->z);
      result["verify"] = verify_json(sis::verify_solution(inst, r.solution->z));
      if (!s.common.out.empty()) write_file(s.common.out, format_vector(r.solution->z) + "\n");
    } else {
      result["status"] = r.exhaustive ? "none" : "not_found";
      code = kFailed;
    }
  } catch (const CapabilityError& e) {
    result["status"] = "budget_exceeded";
    result["diagnostic"] = e.what();
    code = kFailed;
  }
  result["seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  report["result"] = result;
  emit(report, out);
  return code;
}

// ---- reduce and sweep ----

struct ReduceParams {
  std::optional<std::int64_t> bound;
  std::optional<std::int64_t> q;
  std::optional<std::int64_t> beta;
  std::optional<double> eta;
  std::optional<double> c0;
  std::uint64_t budget = 1;
  std::string oracle = "lattice";
  std::string order = "written";
  bool no_oracle = false;
};

void add_reduce_params(CLI::App* app, ReduceParams& p) {
  app->add_option("--Q", p.q, "modulus override");
  app->add_option("--beta", p.beta, "SIS bound override");
  app->add_option("--eta", p.eta, "single Gaussian parameter instead of the schedule");
  app->add_option("--c0", p.c0, "oracle exponent c0; measured when absent");
  app->add_option("--budget", p.budget, "multiplier on the per-candidate call budget n^(ceil(c0)+2)");
  app->add_option("--oracle", p.oracle, "brute-force | lattice");
  app->add_option("--order", p.order, "written | analysis")->check(CLI::IsMember({"written", "analysis"}));
  app->add_flag("--no-oracle", p.no_oracle, "run with the oracle disabled");
}

reduction::ReductionConfig resolve_config(std::size_t n, const Integer& bound, const ReduceParams& p,
                                          std::uint64_t seed, std::ostream* err) {
  const std::size_t m = reduction::default_m(n);
  const Integer def_q = reduction::default_modulus(n, m, bound);
  std::optional<Integer> q;
  if (p.q) {
    q = Integer(static_cast<long>(*p.q));
    if (err && *q != def_q) note_override(*err, "--Q", q->get_str(), "Q = " + def_q.get_str(), "ceil(n sqrt(m) M)");
  }
  const std::int64_t def_beta = sis::default_beta(n, q.value_or(def_q));
  if (p.beta && err && *p.beta != def_beta)
    note_override(*err, "--beta", std::to_string(*p.beta), "beta = " + std::to_string(def_beta), "ceil(beta_n) + 1");
  reduction::ReductionConfig c = reduction::make_config(n, bound, 1.0, seed, q, p.beta);
  c.oracle = p.no_oracle ? std::nullopt : std::optional<sis::Solver>(sis::parse_solver(p.oracle));
  c.order = p.order == "analysis" ? reduction::Order::analysis : reduction::Order::written;
  return c;
}

reduction::SivpOptions sivp_options(const ReduceParams& p, bool keep_trials) {
  reduction::SivpOptions opt;
  opt.c0 = p.c0;
  opt.budget_multiplier = p.budget;
  opt.keep_trials = keep_trials;
  opt.eta = p.eta;
  return opt;
}

struct ReduceArgs {
  Common common;
  std::string basis;
  std::string csv;
  ReduceParams params;
};

int cmd_reduce(ReduceArgs& r, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = r.common.resolve_seed(err);
  const lattice::LatticeBasis basis = load_basis(r.basis);
  Integer bound = basis.entry_bound() < 1 ? Integer(1) : basis.entry_bound();
  if (r.params.bound) {
    const Integer given(static_cast<long>(*r.params.bound));
    if (given < basis.entry_bound())
      throw DomainError("reduce: basis has entries above --M " + given.get_str());
    if (given != bound) note_override(err, "--M", given.get_str(), "M = " + bound.get_str(), "entry bound of the basis");
    bound = given;
  }
  const reduction::ReductionConfig config = resolve_config(basis.dim(), bound, r.params, seed, &err);
  const reduction::SivpRun run = reduction::sivp_approximate(basis, config, sivp_options(r.params, true));

  json transcript = reduction::transcript_json(run);
  transcript["command"] = "reduce";
  transcript["basis"] = r.basis;
  write_or_print(r.common.out, transcript.dump(1) + "\n", out);
  if (!r.csv.empty()) write_file(r.csv, reduction::csv_header() + "\n" + reduction::csv_row(run) + "\n");
  if (!run.result.success) {
    err << "reduce: no full-rank result within the call budget\n";
    return kFailed;
  }
  return kSuccess;
}

struct SweepArgs {
  Common common;
  std::vector<std::size_t> n;
  std::vector<std::int64_t> bound;
  std::vector<std::int64_t> q;
  std::vector<std::int64_t> beta;
  std::size_t trials = 1;
  std::size_t threads = 0;
  ReduceParams params;
};

struct SweepCell {
  std::size_t n;
  std::int64_t bound;
  std::optional<std::int64_t> q;
  std::optional<std::int64_t> beta;
  std::size_t rep;
  std::uint64_t seed;
};

std::string sweep_header() { return "cell,seed,status," + reduction::csv_header(); }

std::string run_cell(std::size_t index, const SweepCell& cell, const ReduceParams& base) {
  std::string prefix = std::to_string(index) + ',' + std::to_string(cell.seed) + ',';
  try {
    ReduceParams p = base;
    p.q = cell.q;
    p.beta = cell.beta;
    Rng rng(cell.seed, kBasisStream);
    const lattice::LatticeBasis basis = lattice::random_basis(cell.n, cell.bound, rng);
    const reduction::ReductionConfig config =
        resolve_config(cell.n, Integer(static_cast<long>(cell.bound)), p, cell.seed, nullptr);
    const reduction::SivpRun run = reduction::sivp_approximate(basis, config, sivp_options(p, false));
    return prefix + (run.result.success ? "ok," : "timeout,") + reduction::csv_row(run);
  } catch (const CapabilityError&) {
    return prefix + "timeout," + std::to_string(cell.n) + ",,,,,,,,,,";
  }
}

int cmd_sweep(SweepArgs& s, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = s.common.resolve_seed(err);
  if (s.n.empty() || s.bound.empty()) throw DomainError("sweep: --n and --M grids must be non-empty");
  if (s.trials < 1) throw DomainError("sweep: --trials must be >= 1");
  std::vector<std::optional<std::int64_t>> qs, betas;
  for (auto v : s.q) qs.emplace_back(v);
  for (auto v : s.beta) betas.emplace_back(v);
  if (qs.empty()) qs.emplace_back();
  if (betas.empty()) betas.emplace_back();

  const std::uint64_t total = s.n.size() * s.bound.size() * qs.size() * betas.size() * s.trials;
  if (total > kMaxSweepCells) throw DomainError("sweep: grid has " + std::to_string(total) + " cells, limit 10000");

  std::vector<SweepCell> cells;
  for (std::size_t n : s.n)
    for (std::int64_t b : s.bound)
      for (const auto& q : qs)
        for (const auto& beta : betas)
          for (std::size_t rep = 0; rep < s.trials; ++rep) {
            SweepCell c{n, b, q, beta, rep, derive_seed(seed, cells.size())};
            ReduceParams p = s.params;
            p.q = q;
            p.beta = beta;
            resolve_config(n, Integer(static_cast<long>(b)), p, c.seed, nullptr);  // validates the cell
            cells.push_back(c);
          }

  std::vector<std::string> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        rows[i] = run_cell(i, cells[i], s.params);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::size_t threads = s.threads ? s.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<std::size_t>(threads, cells.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::string csv = sweep_header() + "\n";
  for (const auto& row : rows) csv += row + "\n";
  write_or_print(s.common.out, csv, out);
  if (!s.common.out.empty()) {
    json report = header("sweep", seed);
    report["config"] = {{"n", s.n},           {"M", s.bound},
                        {"Q", s.q},           {"beta", s.beta},
                        {"trials", s.trials}, {"budget", s.params.budget},
                        {"oracle", s.params.no_oracle ? "none" : s.params.oracle},
                        {"out", s.common.out}};
    if (s.params.c0) report["config"]["c0"] = *s.params.c0;
    if (s.params.eta) report["config"]["eta"] = *s.params.eta;
    report["result"] = {{"cells", cells.size()}};
    emit(report, out);
  }
  return kSuccess;
}

// ---- eta ----

struct EtaArgs {
  Common common;
  std::string basis;
  std::optional<double> eps;
  bool estimate = true;
};

json estimate_json(const gaussian::SmoothingEstimate& e) {
  return json{{"eps", e.eps},
              {"lower", e.lower},
              {"upper", e.upper},
              {"estimate", e.estimate()},
              {"method", gaussian::to_string(e.method)},
              {"lambda_n", e.lambda_n},
              {"dual_lambda_1", e.dual_lambda_1},
              {"analytic_lower", e.analytic_lower},
              {"analytic_upper", e.analytic_upper}};
}

int cmd_eta(EtaArgs& e, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = e.common.resolve_seed(err);
  const lattice::LatticeBasis basis = load_basis(e.basis);
  const std::size_t n = basis.dim();
  // eps = n^{-log2 n}; that is 1 at n = 1, outside (0,1), so 0.01 there.
  const double def_eps = n >= 2 ? std::pow(static_cast<double>(n), -std::log2(static_cast<double>(n))) : 0.01;
  if (e.eps && *e.eps != def_eps)
    note_override(err, "--eps", format_double(*e.eps), "eps = " + format_double(def_eps), "n^(-log2 n)");
  const double eps = e.eps.value_or(def_eps);

  json report = header("eta", seed);
  report["config"] = {{"basis", e.basis}, {"eps", eps}, {"estimate", e.estimate}};
  const reduction::EtaSchedule schedule = reduction::eta_schedule(basis);
  report["schedule"] = reduction::to_json(schedule);
  if (e.estimate) {
    const gaussian::SmoothingEstimate est = gaussian::smoothing_estimate(basis, eps);
    report["smoothing"] = estimate_json(est);
    const gaussian::EtaTilde pick = reduction::select_eta(schedule, est);
    report["selected"] = {{"value", pick.value},
                          {"provenance", pick.provenance},
                          {"certification", gaussian::to_string(pick.certification)}};
  }
  write_or_print(e.common.out, report.dump(1) + "\n", out);
  return kSuccess;
}

// ---- stats ----

json moddist_json(const stats::ModDistanceReport& r) {
  return json{{"Q", r.big_q},
              {"q", r.q},
              {"t", r.t},
              {"r", r.r},
              {"delta_exact", rational_json(r.delta_exact)},
              {"upper_bound", rational_json(r.upper_bound)},
              {"uniform", r.uniform}};
}

json lift_json(const stats::LiftReport& r) {
  json j{{"threshold", integer_json(r.threshold)},
         {"analytic", r.analytic},
         {"scan", stats::to_string(r.scan)},
         {"scanned", r.scanned},
         {"violations", r.violations}};
  j["counterexample"] = r.counterexample ? vector_json(*r.counterexample) : json(nullptr);
  return j;
}

json incompat_json(const stats::IncompatibilityReport& r) {
  return json{{"n", r.n},
              {"m", r.m},
              {"Q", r.big_q},
              {"beta", r.beta},
              {"lifting_threshold", integer_json(r.lifting_threshold)},
              {"uniformity_slope", rational_json(r.uniformity_slope)},
              {"nondivisor_ceiling", integer_json(r.nondivisor_ceiling)},
              {"verdict", stats::to_string(r.verdict)},
              {"witnesses", r.witnesses}};
}

json distance_json(const stats::EmpiricalDistance& d) {
  return json{{"domain", d.domain},
              {"trials", d.trials},
              {"estimate", d.estimate},
              {"half_width", d.half_width},
              {"bias_warning", d.bias_warning}};
}

struct StatsArgs {
  Common common;
  std::int64_t q_big = 0;
  std::int64_t q = 0;
  // lift
  std::string instance;
  std::optional<std::int64_t> lift_q;
  std::size_t n = 0, m = 0;
  std::int64_t beta = 0;
  std::uint64_t trials = 1;
  std::uint64_t budget = 10'000'000;
  // uniformity
  std::string basis;
  std::optional<std::int64_t> bound;
  std::optional<double> eta;
  std::string channel = "gaussian";
  std::size_t replicates = 0;
};

int stats_moddist(StatsArgs& s, std::ostream& out, std::ostream& err) {
  json report = header("stats moddist", s.common.resolve_seed(err));
  report.update(moddist_json(stats::exact_mod_distance(s.q_big, s.q)));
  report["config"] = {{"Q", s.q_big}, {"q", s.q}};
  write_or_print(s.common.out, report.dump(1) + "\n", out);
  return kSuccess;
}

int stats_lift(StatsArgs& s, std::ostream& out, std::ostream& err) {
  std::vector<sis::SisInstance> instances;
  const std::uint64_t seed = s.common.resolve_seed(err);
  json report = header("stats lift", seed);
  if (!s.instance.empty()) {
    instances.push_back(sis::parse_instance(read_file(s.instance)));
    report["config"] = {{"instance", s.instance}};
  } else {
    if (s.n < 1 || s.m <= s.n || s.q_big < 1) throw DomainError("stats lift: give --instance or valid --n --m --Q");
    for (std::uint64_t t = 0; t < s.trials; ++t) {
      Rng rng(seed, t);
      instances.push_back(sis::random_instance(s.n, s.m, s.q_big, s.beta, rng));
    }
    report["config"] = {{"n", s.n}, {"m", s.m}, {"Q", s.q_big}, {"beta", s.beta}, {"trials", s.trials}};
  }
  report["config"]["budget"] = s.budget;
  json reports = json::array();
  std::uint64_t violations = 0;
  for (const sis::SisInstance& inst : instances) {
    const Integer threshold = Integer(static_cast<long>(inst.m())) * (inst.modulus() - 1) * inst.beta();
    const std::int64_t q = s.lift_q.value_or(to_int64(threshold) + 1);
    const stats::LiftReport r = stats::lift_check(inst.matrix(), inst.modulus(), inst.beta(), q, s.budget);
    json j = lift_json(r);
    j["q"] = q;
    violations += r.violations;
    reports.push_back(j);
  }
  if (s.lift_q) report["config"]["q"] = *s.lift_q;
  report["result"] = {{"reports", reports}, {"violations", violations}};
  write_or_print(s.common.out, report.dump(1) + "\n", out);
  return kSuccess;
}

int stats_incompat(StatsArgs& s, std::ostream& out, std::ostream& err) {
  const stats::IncompatibilityReport r = stats::incompatibility_report(
      static_cast<std::int64_t>(s.n), static_cast<std::int64_t>(s.m), s.q_big, s.beta);
  json report = header("stats incompat", s.common.resolve_seed(err));
  report.update(incompat_json(r));
  report["config"] = {{"n", s.n}, {"m", s.m}, {"Q", s.q_big}, {"beta", s.beta}};
  write_or_print(s.common.out, report.dump(1) + "\n", out);
  return kSuccess;
}

int stats_uniformity(StatsArgs& s, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = s.common.resolve_seed(err);
  std::optional<lattice::LatticeBasis> basis;
  json config{{"Q", s.q_big}, {"trials", s.trials}, {"channel", s.channel}};
  if (!s.basis.empty()) {
    basis.emplace(load_basis(s.basis));
    config["basis"] = s.basis;
  } else {
    if (s.n < 1 || !s.bound) throw DomainError("stats uniformity: give --basis or --n and --M");
    Rng rng(seed, kBasisStream);
    basis.emplace(lattice::random_basis(s.n, *s.bound, rng));
    config["n"] = s.n;
    config["M"] = *s.bound;
  }
  const stats::Channel channel = s.channel == "uniform" ? stats::Channel::exact_uniform : stats::Channel::gaussian;
  double eta = 0;
  if (s.eta) {
    eta = *s.eta;
  } else if (channel == stats::Channel::gaussian) {
    // Four times the certified upper bracket at eps = 0.01 lands in the smooth regime.
    eta = 4 * gaussian::smoothing_estimate(*basis, 0.01).upper;
    err << "note: no --eta given, using 4 x upper smoothing bracket (eps = 0.01) = " << format_double(eta) << '\n';
  }
  config["eta"] = eta;
  config["replicates"] = s.replicates;

  stats::UniformityOptions opt;
  opt.channel = channel;
  opt.seed = seed;
  const stats::UniformityResult r = stats::column_uniformity_test(*basis, s.q_big, eta, s.trials, opt);
  json result;
  if (r.distance) result["distance"] = distance_json(*r.distance);
  if (r.marginal) {
    json marg = json::array();
    for (const auto& d : r.marginal->marginals) marg.push_back(distance_json(d));
    result["marginals"] = marg;
    result["collisions"] = r.marginal->collisions;
    result["expected_collisions"] = r.marginal->expected_collisions;
  }
  if (s.replicates > 0) {
    const double band = stats::uniformity_null_band(*basis, s.q_big, s.trials, s.replicates, 0.99, seed);
    result["null_band_99"] = band;
    if (r.distance) result["inside_null_band"] = r.distance->estimate <= band;
  }
  // ln(m eps / 2) at eps = n^{-log2 n}
  const double dim = static_cast<double>(basis->dim());
  result["log_analytic_bound"] =
      stats::log_uniformity_bound(reduction::default_m(basis->dim()), -std::log2(dim) * std::log(dim));
  json report = header("stats uniformity", seed);
  report["config"] = config;
  report["result"] = result;
  write_or_print(s.common.out, report.dump(1) + "\n", out);
  return kSuccess;
}

int dispatch(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
  CLI::App app{"Experiments with the SIVP to non-modular SIS reduction", "sisz"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(reduction::kVersion));

  GenArgs gen;
  CLI::App* g = app.add_subcommand("gen", "generate a uniform SIS instance or a random basis");
  add_common(g, gen.common);
  g->add_option("--kind", gen.kind, "instance | basis")->check(CLI::IsMember({"instance", "basis"}));
  g->add_option("--n", gen.n, "rows / dimension")->required()->check(CLI::PositiveNumber);
  g->add_option("--m", gen.m, "columns (default (n+1)n)");
  g->add_option("--Q", gen.q, "modulus; entries in {0..Q-1}");
  g->add_option("--M", gen.bound, "entry bound (basis), or Q = ceil(n sqrt(m) M) for instances");
  g->add_option("--beta", gen.beta, "SIS bound written to the instance header");
  g->add_flag("--planted", gen.planted, "repeat the first column so a solution exists");

  SolveArgs solve;
  CLI::App* s = app.add_subcommand("solve", "run an SIS solver on an instance file");
  add_common(s, solve.common);
  s->add_option("--instance", solve.instance, "instance file")->required();
  s->add_option("--solver", solve.solver, "brute-force | lattice");
  s->add_option("--beta", solve.beta, "override the instance's beta");
  s->add_option("--budget", solve.budget, "brute-force box size or enumeration node limit");

  ReduceArgs reduce;
  CLI::App* r = app.add_subcommand("reduce", "approximate SIVP on a basis through the SIS oracle");
  add_common(r, reduce.common);
  r->add_option("--basis", reduce.basis, "basis file, vectors as columns")->required();
  r->add_option("--csv", reduce.csv, "CSV summary path");
  r->add_option("--M", reduce.params.bound, "entry bound override");
  add_reduce_params(r, reduce.params);

  SweepArgs sweep;
  CLI::App* w = app.add_subcommand("sweep", "reduction over a parameter grid of random bases");
  add_common(w, sweep.common);
  w->add_option("--n", sweep.n, "dimensions")->required()->expected(1, -1);
  w->add_option("--M", sweep.bound, "entry bounds")->required()->expected(1, -1);
  w->add_option("--Q", sweep.q, "modulus overrides")->expected(1, -1);
  w->add_option("--beta", sweep.beta, "beta overrides")->expected(1, -1);
  w->add_option("--trials", sweep.trials, "random bases per grid point");
  w->add_option("--threads", sweep.threads, "worker threads (default: hardware)");
  w->add_option("--eta", sweep.params.eta, "single Gaussian parameter instead of the schedule");
  w->add_option("--c0", sweep.params.c0, "oracle exponent c0; measured per cell when absent");
  w->add_option("--budget", sweep.params.budget, "multiplier on the per-candidate call budget");
  w->add_option("--oracle", sweep.params.oracle, "brute-force | lattice");
  w->add_flag("--no-oracle", sweep.params.no_oracle, "run with the oracle disabled");

  EtaArgs eta;
  CLI::App* e = app.add_subcommand("eta", "print the Gaussian parameter schedule of a basis");
  add_common(e, eta.common);
  e->add_option("--basis", eta.basis, "basis file")->required();
  e->add_option("--eps", eta.eps, "smoothing tolerance (default n^(-log2 n))");
  e->add_flag("!--no-estimate", eta.estimate, "skip the smoothing estimate");

  StatsArgs st;
  CLI::App* stats_app = app.add_subcommand("stats", "statistical-distance computations");
  stats_app->require_subcommand(1);
  CLI::App* md = stats_app->add_subcommand("moddist", "exact distance of X mod q from uniform");
  add_common(md, st.common);
  md->add_option("--Q", st.q_big)->required();
  md->add_option("--q", st.q)->required();
  CLI::App* lf = stats_app->add_subcommand("lift", "lifting check by exhaustive box scan");
  add_common(lf, st.common);
  lf->add_option("--instance", st.instance, "instance file; random instances when absent");
  lf->add_option("--n", st.n);
  lf->add_option("--m", st.m);
  lf->add_option("--Q", st.q_big);
  lf->add_option("--beta", st.beta);
  lf->add_option("--q", st.lift_q, "modulus to test (default m(Q-1)beta + 1)");
  lf->add_option("--trials", st.trials, "random instances");
  lf->add_option("--budget", st.budget, "largest box scanned");
  CLI::App* ic = stats_app->add_subcommand("incompat", "lifting versus uniformity for the modular reduction");
  add_common(ic, st.common);
  ic->add_option("--n", st.n)->required();
  ic->add_option("--m", st.m)->required();
  ic->add_option("--Q", st.q_big)->required();
  ic->add_option("--beta", st.beta)->required();
  CLI::App* un = stats_app->add_subcommand("uniformity", "distance of floor(Q B^-1 y) from uniform");
  add_common(un, st.common);
  un->add_option("--basis", st.basis, "basis file; random basis from --n --M when absent");
  un->add_option("--n", st.n);
  un->add_option("--M", st.bound);
  un->add_option("--Q", st.q_big)->required();
  un->add_option("--eta", st.eta, "Gaussian parameter (default 4 x upper smoothing bracket at eps 0.01)");
  un->add_option("--trials", st.trials, "samples");
  un->add_option("--channel", st.channel, "gaussian | uniform")->check(CLI::IsMember({"gaussian", "uniform"}));
  un->add_option("--replicates", st.replicates, "exact-uniform replicates for a 99% null band (0 = none)");

  std::vector<std::string> args = merge_config(raw);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  if (g->parsed()) return cmd_gen(gen, out, err);
  if (s->parsed()) return cmd_solve(solve, out, err);
  if (r->parsed()) return cmd_reduce(reduce, out, err);
  if (w->parsed()) return cmd_sweep(sweep, out, err);
  if (e->parsed()) return cmd_eta(eta, out, err);
  if (md->parsed()) return stats_moddist(st, out, err);
  if (lf->parsed()) return stats_lift(st, out, err);
  if (ic->parsed()) return stats_incompat(st, out, err);
  if (un->parsed()) return stats_uniformity(st, out, err);
  return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const IoError& ex) {
    err << "error: " << ex.what() << '\n';
    return kIo;
  } catch (const ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kIo;
  } catch (const DomainError& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kUsage;
  } catch (const CapabilityError& ex) {
    err << "failed: " << ex.what() << '\n';
    return kFailed;
  } catch (const RankDeficiencyError& ex) {
    err << "failed: " << ex.what() << '\n';
    return kFailed;
  } catch (const std::invalid_argument& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kUsage;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kInternal;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace sisz::cli
