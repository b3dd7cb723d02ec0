#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "sisz/errors.hpp"
#include "sisz/reduction.hpp"

using namespace sisz;
using namespace sisz::reduction;

namespace {

std::size_t rank_of(const std::vector<lattice::LatticeVector>& vs) {
  std::vector<IntVec> coords;
  for (const auto& v : vs) coords.push_back(v.coords);
  return oracle::rank_of(coords);
}

lattice::LatticeBasis identity_basis(std::size_t n) { return lattice::LatticeBasis(IntegerMatrix::identity(n)); }

lattice::LatticeBasis basis_n3() {
  Rng rng(11, 1);
  return lattice::random_basis(3, 5, rng);
}

// A comfortably smooth width for the test bases: 3x the bisection estimate.
double smooth_eta(const lattice::LatticeBasis& b) { return 3 * gaussian::smoothing_estimate(b, 0.01).estimate(); }

// |Q y - B a|^2 <= n^3 M^2, recomputed here from the trial record.
bool yz_holds(const lattice::LatticeBasis& b, const Trial& t, const ReductionConfig& c) {
  const std::size_t n = b.dim();
  for (std::size_t j = 0; j < t.y.size(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Rational ba = 0;
      for (std::size_t k = 0; k < n; ++k) ba += Rational(b.matrix()(i, k) * t.a(k, j));
      const Rational d = t.y[j][i] - ba / Rational(c.modulus);
      s += d * d;
    }
    const Rational nn(static_cast<long>(n));
    const Rational rhs = nn * nn * nn * Rational(c.bound * c.bound) / Rational(c.modulus * c.modulus);
    if (s > rhs) return false;
  }
  return true;
}

}  // namespace

TEST(ReductionConfig, Defaults) {
  EXPECT_EQ(default_m(1), 2u);
  EXPECT_EQ(default_m(3), 12u);
  EXPECT_EQ(default_modulus(3, 12, 5), 52);
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::size_t m = default_m(n);
    for (long bound = 1; bound <= 40; ++bound) {
      const Integer q = default_modulus(n, m, bound);
      const Integer lhs = Integer(static_cast<long>(m * n * n)) * bound * bound;
      ASSERT_GE(q * q, lhs);
      ASSERT_LT((q - 1) * (q - 1), lhs);
    }
  }
  const ReductionConfig c = make_config(3, 5, 1.0, 7);
  EXPECT_EQ(c.m, 12u);
  EXPECT_EQ(c.modulus, 52);
  EXPECT_EQ(c.beta, sis::default_beta(3, 52));
  EXPECT_EQ(c.eta.provenance, "manual");
}

TEST(ReductionConfig, Rejections) {
  EXPECT_THROW(make_config(3, 5, 1.0, 0, Integer(51)), DomainError);
  EXPECT_NO_THROW(make_config(3, 5, 1.0, 0, Integer(52)));
  EXPECT_THROW(make_config(3, 5, 1.0, 0, std::nullopt, 0), DomainError);
  EXPECT_THROW(make_config(3, 5, 0.0, 0), DomainError);
  EXPECT_THROW(make_config(3, 5, NAN, 0), DomainError);
  EXPECT_THROW(make_config(0, 5, 1.0, 0), DomainError);
  ReductionConfig c = make_config(2, 3, 1.0, 0);
  c.m = 5;
  EXPECT_THROW(validate(c), DomainError);
}

TEST(BuildA, Examples) {
  const std::vector<RatVec> zeros(4, RatVec(2, Rational(0)));
  const IntegerMatrix z = build_A(zeros, 10);
  for (const Integer& v : z.data()) EXPECT_EQ(v, 0);
  const std::vector<RatVec> near_one{{Rational(999, 1000), Rational(999, 1000)}};
  const IntegerMatrix a = build_A(near_one, 10);
  EXPECT_EQ(a(0, 0), 9);
  EXPECT_EQ(a(1, 0), 9);
  EXPECT_THROW(build_A(std::vector<RatVec>{{Rational(1), Rational(0)}}, 10), DomainError);
  EXPECT_THROW(build_A(std::vector<RatVec>{{Rational(-1, 5), Rational(0)}}, 10), DomainError);

  const lattice::LatticeBasis b(IntegerMatrix::from_rows({{2, 1}, {0, 3}}));
  const IntegerMatrix fromy = build_A(b, {{Rational(1), Rational(1)}}, 10);
  // B^{-1}(1,1) = (1/3, 1/3)
  EXPECT_EQ(fromy(0, 0), 3);
  EXPECT_EQ(fromy(1, 0), 3);
  EXPECT_THROW(build_A(b, {{Rational(3), Rational(3)}}, 10), DomainError);
}

TEST(EtaSchedule, IdentityBases) {
  const EtaSchedule s4 = eta_schedule(identity_basis(4));
  EXPECT_EQ(s4.r_squared, 1);
  EXPECT_DOUBLE_EQ(s4.eta_hat, 4.0);
  EXPECT_DOUBLE_EQ(s4.alpha, 256.0);
  EXPECT_EQ(s4.k, 10u);
  ASSERT_EQ(s4.candidates.size(), s4.k + 1);
  for (std::size_t k = 1; k < s4.candidates.size(); ++k)
    EXPECT_DOUBLE_EQ(s4.candidates[k], s4.candidates[k - 1] / 2);

  const EtaSchedule s3 = eta_schedule(identity_basis(3));
  EXPECT_DOUBLE_EQ(s3.alpha, 72.0);
  EXPECT_EQ(s3.k, 9u);  // ceil(log2 72) + 2
  EXPECT_DOUBLE_EQ(s3.eta_hat, 2 * std::log2(3.0));

  const EtaSchedule s1 = eta_schedule(lattice::LatticeBasis(IntegerMatrix::from_rows({{5}})));
  EXPECT_DOUBLE_EQ(s1.eta_hat, 10.0);
  EXPECT_EQ(s1.k, 3u);  // 2^1 * 1 = 2, ceil(log2 2) + 2
}

TEST(EtaSchedule, KMatchesCeilLog2Alpha) {
  for (std::size_t n = 1; n <= 20; ++n) {
    const EtaSchedule s = eta_schedule(identity_basis(n));
    const std::size_t ceil_log = static_cast<std::size_t>(std::ceil(std::log2(s.alpha) - 1e-12));
    EXPECT_EQ(s.k, ceil_log + 2) << n;
  }
}

TEST(EtaSchedule, SomeCandidateInTwoToFourEta) {
  // Every eta with eta_hat in [2 eta, alpha eta] has a candidate in [2 eta, 4 eta].
  // Below 2 eta no candidate can reach 2 eta, since all are <= eta_hat.
  Rng rng(5);
  for (int t = 0; t < 6; ++t) {
    const auto b = lattice::random_basis(2 + t % 3, 5, rng);
    const EtaSchedule s = eta_schedule(b);
    EXPECT_LE(s.candidates.back(), s.eta_hat / (4 * s.alpha) * (1 + 1e-12));
    for (int i = 0; i <= 200; ++i) {
      const double eta = s.eta_hat / 2 * std::pow(2 / s.alpha, i / 200.0);
      const bool hit = std::any_of(s.candidates.begin(), s.candidates.end(),
                                   [&](double c) { return c >= 2 * eta && c <= 4 * eta; });
      EXPECT_TRUE(hit) << "eta " << eta << " eta_hat " << s.eta_hat;
    }
    const double above = 0.6 * s.eta_hat;
    EXPECT_TRUE(std::none_of(s.candidates.begin(), s.candidates.end(), [&](double c) { return c >= 2 * above; }));
  }
}

TEST(EtaSchedule, SelectPrefersCertified) {
  EtaSchedule s = eta_schedule(identity_basis(4));
  gaussian::SmoothingEstimate e;
  e.lower = e.upper = 0.3;  // candidates 4 * 2^{-k}: 1.0 lies in [0.6, 1.2]
  const gaussian::EtaTilde chosen = select_eta(s, e);
  EXPECT_EQ(chosen.certification, gaussian::EtaCertification::inside);
  EXPECT_DOUBLE_EQ(chosen.value, 1.0);
  EXPECT_EQ(chosen.provenance, "schedule:2");
  e.lower = 0.01;
  e.upper = 10;
  const gaussian::EtaTilde loose = select_eta(s, e);
  EXPECT_NE(loose.certification, gaussian::EtaCertification::inside);
}

TEST(ShortVectors, DeterministicFactsAtN3) {
  const auto b = basis_n3();
  ReductionConfig c = make_config(3, 5, smooth_eta(b), 1);
  const auto minima = lattice::successive_minima(b, 3);
  TrialContext ctx;
  ctx.lambda_n_squared = minima.squared.back();
  int successes = 0;
  for (std::uint64_t i = 0; i < 25; ++i) {
    const Trial t = short_vectors(b, c, derive_seed(c.seed, i), i, ctx);
    ASSERT_EQ(t.a.rows(), 3u);
    ASSERT_EQ(t.a.cols(), 12u);
    for (const Integer& v : t.a.data()) {
      ASSERT_GE(v, 0);
      ASSERT_LT(v, c.modulus);
    }
    EXPECT_TRUE(t.checks.a_in_range);
    EXPECT_TRUE(t.checks.yz_bound);
    EXPECT_TRUE(yz_holds(b, t, c));
    for (std::size_t j = 0; j < t.y.size(); ++j) {
      // y_j lies in P(B) and differs from x_j by a lattice vector.
      const RatVec k = b.inverse() * t.y[j];
      for (const Rational& v : k) {
        ASSERT_GE(v, 0);
        ASSERT_LT(v, 1);
      }
    }
    if (t.outcome == Outcome::success) {
      ++successes;
      EXPECT_TRUE(t.checks.membership);
      ASSERT_TRUE(t.v_coeffs.has_value());
      EXPECT_EQ(b.combine(*t.v_coeffs), t.v);
      EXPECT_FALSE(is_zero(t.v));
      const auto member = oracle::solve_full_column_rank(b.matrix(), t.v);
      ASSERT_TRUE(member.has_value());
      EXPECT_TRUE(oracle::is_integral(*member));
      EXPECT_TRUE(t.checks.norm_bound.has_value());
      // v = -sum r_j B floor_kappa_j
      IntVec expect(3, Integer(0));
      for (std::size_t j = 0; j < 12; ++j)
        for (std::size_t i = 0; i < 3; ++i) expect[i] -= (*t.r)[j] * t.floor_kappa[j][i];
      EXPECT_EQ(*t.v_coeffs, expect);
    }
    EXPECT_NE(t.outcome, Outcome::aborted);
  }
  EXPECT_GT(successes, 15);
}

TEST(ShortVectors, ReplayIsIdentical) {
  const auto b = basis_n3();
  const ReductionConfig c = make_config(3, 5, smooth_eta(b), 3);
  const Trial t1 = short_vectors(b, c, 99, 4);
  const Trial t2 = short_vectors(b, c, 99, 4);
  EXPECT_EQ(to_json(t1).dump(), to_json(t2).dump());
  const Trial t3 = short_vectors(b, c, 100, 4);
  EXPECT_NE(to_json(t1).dump(), to_json(t3).dump());
}

TEST(ShortVectors, DisabledOracle) {
  const auto b = basis_n3();
  ReductionConfig c = make_config(3, 5, smooth_eta(b), 3);
  c.oracle = std::nullopt;
  const Trial t = short_vectors(b, c, 1);
  EXPECT_EQ(t.outcome, Outcome::oracle_failed);
  EXPECT_TRUE(t.v.empty());
  EXPECT_FALSE(t.r.has_value());
  EXPECT_TRUE(t.checks.a_in_range);
}

TEST(ShortVectors, RejectsMismatchedInputs) {
  const auto b = basis_n3();
  const ReductionConfig c2 = make_config(2, 5, 1.0, 0);
  EXPECT_THROW(short_vectors(b, c2, 0), DomainError);
  const ReductionConfig small_m = make_config(3, 1, 1.0, 0);
  EXPECT_THROW(short_vectors(b, small_m, 0), DomainError);  // entries exceed M = 1
}

TEST(ShortVectors, TinyEtaNeverReportsZeroAsSuccess) {
  // Far below smoothing, x_j rounds into the fundamental cell and v is often 0.
  const auto b = identity_basis(2);
  const ReductionConfig c = make_config(2, 1, 1e-3, 8);
  int zero = 0;
  for (std::uint64_t i = 0; i < 30; ++i) {
    const Trial t = short_vectors(b, c, derive_seed(8, i), i);
    if (t.outcome == Outcome::success) {
      EXPECT_FALSE(is_zero(t.v));
    }
    if (t.outcome == Outcome::zero_output) {
      ++zero;
      EXPECT_TRUE(is_zero(t.v));
    }
  }
  EXPECT_GT(zero, 0);
}

TEST(ShortVectors, AnalysisOrderOutputsLatticeVectors) {
  const auto b = basis_n3();
  ReductionConfig c = make_config(3, 5, smooth_eta(b), 21);
  c.order = Order::analysis;
  const auto minima = lattice::successive_minima(b, 3);
  TrialContext ctx;
  ctx.lambda_n = std::sqrt(minima.squared.back().get_d());
  int successes = 0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const Trial t = short_vectors(b, c, derive_seed(21, i), i, ctx);
    if (t.outcome != Outcome::success) continue;
    ++successes;
    EXPECT_TRUE(t.checks.membership);
    // x_j - y_j is a lattice vector: B c_j with y_j - x_j = -B c_j.
    for (std::size_t j = 0; j < 12; ++j) {
      const IntVec bc = b.combine(t.floor_kappa[j]);
      for (std::size_t r = 0; r < 3; ++r)
        EXPECT_NEAR(t.x[j][r] - t.y[j][r].get_d(), bc[r].get_d(), 1e-9 * (1 + std::abs(bc[r].get_d())));
    }
  }
  EXPECT_GT(successes, 5);
}

TEST(Collect, OracleDisabledStaysAtRankZero) {
  const auto b = basis_n3();
  ReductionConfig c = make_config(3, 5, smooth_eta(b), 3);
  c.oracle = std::nullopt;
  CollectOptions opt;
  opt.max_calls = 1;
  const CollectResult r = collect_independent(b, c, opt);
  EXPECT_EQ(r.rank, 0u);
  EXPECT_EQ(r.calls, 1u);
  EXPECT_FALSE(r.full_rank());
  EXPECT_FALSE(r.successes_to_full_rank.has_value());
}

TEST(Collect, ReachesFullRankAtN3) {
  const auto b = basis_n3();
  const ReductionConfig c = make_config(3, 5, smooth_eta(b), 4);
  CollectOptions opt;
  opt.max_calls = 200;
  const CollectResult r = collect_independent(b, c, opt);
  ASSERT_TRUE(r.full_rank());
  EXPECT_EQ(rank_of(r.vectors), 3u);
  EXPECT_LE(*r.successes_to_full_rank, r.successes);
  EXPECT_EQ(r.trials.size(), r.calls);
  for (std::size_t i = 0; i < r.trials.size(); ++i) EXPECT_EQ(r.trials[i].seed, derive_seed(4, i));
}

TEST(Sivp, IdentityLattice) {
  const auto b = identity_basis(3);
  const ReductionConfig c = make_config(3, 1, 1.0, 12);
  SivpOptions opt;
  opt.c0 = 0;
  const SivpRun run = sivp_approximate(b, c, opt);
  EXPECT_EQ(run.budget_per_candidate, 9u);
  EXPECT_LE(run.calls, (run.schedule.k + 1) * run.budget_per_candidate);
  EXPECT_EQ(run.candidates.size(), run.schedule.k + 1);
  ASSERT_TRUE(run.result.success);
  EXPECT_DOUBLE_EQ(run.result.lambda_n, 1.0);
  EXPECT_GE(run.result.achieved_factor, 1.0);
  EXPECT_LE(run.result.achieved_factor, run.result.bound_factor);
  EXPECT_EQ(rank_of(run.result.vectors), 3u);
}

TEST(Sivp, ManualEtaReplacesSchedule) {
  const auto b = basis_n3();
  const ReductionConfig c = make_config(3, 5, 1.0, 2);
  SivpOptions opt;
  opt.c0 = 0;
  opt.eta = smooth_eta(b);
  const SivpRun run = sivp_approximate(b, c, opt);
  ASSERT_EQ(run.candidates.size(), 1u);
  EXPECT_DOUBLE_EQ(run.candidates[0].eta, *opt.eta);
  opt.eta = -1;
  EXPECT_THROW(sivp_approximate(b, c, opt), DomainError);
}

TEST(Transcript, FieldsAndCsv) {
  const auto b = identity_basis(2);
  const ReductionConfig c = make_config(2, 1, 1.0, 5);
  SivpOptions opt;
  opt.c0 = 0;
  const SivpRun run = sivp_approximate(b, c, opt);
  const json j = transcript_json(run);
  for (const char* key : {"config", "trials", "seed", "schedule", "result", "candidates"})
    EXPECT_TRUE(j.contains(key)) << key;
  ASSERT_FALSE(j["trials"].empty());
  for (const char* key : {"v_coeffs", "r", "A_hash", "checks", "seed", "A", "outcome"})
    EXPECT_TRUE(j["trials"][0].contains(key)) << key;
  EXPECT_EQ(j["seed"], 5u);
  const std::string text = transcript_text(run);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text.find("time"), std::string::npos);
  // Object keys come out sorted.
  EXPECT_LT(text.find("\"c0\""), text.find("\"config\""));
  EXPECT_EQ(csv_header(), "n,m,M,Q,beta,eta,calls,successes,max_norm,lambda_n,factor");
  const std::string row = csv_row(run);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 10);
  EXPECT_EQ(row.rfind("2,6,1,", 0), 0u);
  EXPECT_EQ(transcript_text(sivp_approximate(b, c, opt)), text);
}

TEST(NormBound, Factor) {
  EXPECT_DOUBLE_EQ(norm_bound_factor(1, 2, 3), 0.0);
  EXPECT_NEAR(norm_bound_factor(4, 20, 2), 16 * std::sqrt(2.0) * 2 * std::sqrt(80.0) * 2, 1e-9);
  EXPECT_EQ(matrix_hash(IntegerMatrix::identity(2)), matrix_hash(IntegerMatrix::identity(2)));
  EXPECT_NE(matrix_hash(IntegerMatrix::identity(2)), matrix_hash(IntegerMatrix::identity(3)));
}

TEST(ShortVectors, OutputsEscapeAFixedHyperplane) {
  // Take H spanned by two independent outputs; later outputs must leave H
  // in more than 10% of successful trials, in either sampling order.
  const auto b = basis_n3();
  const auto minima = lattice::successive_minima(b, 3);
  TrialContext ctx;
  ctx.lambda_n = std::sqrt(minima.squared.back().get_d());
  for (Order order : {Order::written, Order::analysis}) {
    ReductionConfig c = make_config(3, 5, smooth_eta(b), 31);
    c.order = order;
    std::vector<IntVec> plane;
    std::size_t in_plane = 0, total = 0;
    for (std::uint64_t i = 0; i < 80; ++i) {
      const Trial t = short_vectors(b, c, derive_seed(31, i), i, ctx);
      if (t.outcome != Outcome::success) continue;
      if (plane.size() < 2) {
        plane.push_back(t.v);
        if (oracle::rank_of(plane) < plane.size()) plane.pop_back();
        continue;
      }
      ++total;
      std::vector<IntVec> with = plane;
      with.push_back(t.v);
      if (oracle::rank_of(with) < 3) ++in_plane;
    }
    ASSERT_GE(total, 30u) << to_string(order);
    EXPECT_LT(static_cast<double>(in_plane) / total, 0.9) << to_string(order);
  }
}
