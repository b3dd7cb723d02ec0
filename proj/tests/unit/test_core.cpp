#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "sisz/arith.hpp"
#include "sisz/errors.hpp"
#include "sisz/io.hpp"
#include "sisz/matrix.hpp"
#include "sisz/rng.hpp"

using namespace sisz;

TEST(Arith, DoubleConvertsExactly) {
  EXPECT_EQ(to_rational(0.5), Rational(1, 2));
  EXPECT_EQ(to_rational(-2.25), Rational(-9, 4));
  // 0.1 is the dyadic 3602879701896397 / 2^55
  Rational tenth = to_rational(0.1);
  EXPECT_EQ(tenth.get_den(), Integer(1) << 55);
  EXPECT_EQ(tenth.get_num(), Integer("3602879701896397"));
  EXPECT_EQ(tenth.get_d(), 0.1);
  EXPECT_THROW(to_rational(std::nan("")), DomainError);
}

TEST(Arith, FloorCeilFrac) {
  EXPECT_EQ(sisz::floor(Rational(-5, 2)), -3);
  EXPECT_EQ(sisz::ceil(Rational(-5, 2)), -2);
  EXPECT_EQ(frac(Rational(-5, 2)), Rational(1, 2));
  EXPECT_EQ(frac(Rational(7)), 0);
  EXPECT_EQ(sisz::floor(Rational(7, 7)), 1);
}

TEST(Arith, RootsMatchBruteForce) {
  for (unsigned k = 1; k <= 4; ++k) {
    for (long v = 0; v <= 3000; ++v) {
      long fl = 0;
      while (std::pow(fl + 1, k) <= v) ++fl;
      long cl = fl;
      if (std::pow(cl, k) < v) ++cl;
      ASSERT_EQ(floor_root(Integer(v), k), fl) << v << " " << k;
      ASSERT_EQ(ceil_root(Integer(v), k), cl) << v << " " << k;
    }
  }
  EXPECT_EQ(isqrt(Integer(99)), 9);
  EXPECT_EQ(isqrt(Integer(100)), 10);
}

TEST(Arith, Int64Conversion) {
  EXPECT_EQ(to_int64(Integer("-9223372036854775808")), INT64_MIN);
  EXPECT_THROW(to_int64(Integer("9223372036854775808")), std::overflow_error);
}

TEST(Arith, TextRoundTrip) {
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(to_string(Rational(-3, 2)), "-3/2");
  EXPECT_EQ(parse_integer("123456789012345678901234567890").get_str(), "123456789012345678901234567890");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_integer("12x"), ParseError);
  for (double x : {0.1, 1.0 / 3, 1e-300, 123456.789, -0.0}) EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Matrix, BoundsAndShape) {
  EXPECT_THROW(IntegerMatrix(0, 3), DomainError);
  IntegerMatrix m(2, 3);
  EXPECT_THROW(m.at(2, 0), std::out_of_range);
  EXPECT_THROW(m.at(0, 3), std::out_of_range);
  m(1, 2) = -7;
  EXPECT_EQ(entry_bound(m), 7);
  EXPECT_EQ(m.transpose()(2, 1), -7);
}

TEST(Matrix, DeterminantInverseAdjugate) {
  IntegerMatrix a = IntegerMatrix::from_rows({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  EXPECT_EQ(determinant(a), 18);
  RationalMatrix inv = inverse(a);
  EXPECT_EQ(to_rational(a) * inv, RationalMatrix::identity(3));
  IntegerMatrix adj = adjugate(a);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(Rational(adj(i, j)), inv(i, j) * 18);
  IntegerMatrix singular = IntegerMatrix::from_rows({{1, 2}, {2, 4}});
  EXPECT_EQ(determinant(singular), 0);
  EXPECT_EQ(rank(singular), 1u);
  EXPECT_THROW(inverse(singular), RankDeficiencyError);
}

TEST(TextFormat, IntegerMatrixRoundTrip) {
  Rng rng(3);
  IntegerMatrix m(3, 5);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 5; ++c) m(r, c) = static_cast<long>(rng.uniform_int(-1000, 1000));
  m(0, 0) = Integer("-98765432109876543210");
  const std::string text = format_matrix(m);
  EXPECT_EQ(text.substr(0, 4), "3 5\n");
  EXPECT_EQ(parse_integer_matrix(text), m);
}

TEST(TextFormat, RationalMatrixRoundTrip) {
  RationalMatrix m = RationalMatrix::from_rows({{Rational(1, 2), Rational(-3)}, {Rational(0), Rational(7, 9)}});
  std::stringstream ss;
  write_matrix(ss, m);
  EXPECT_NE(ss.str().find("1/2"), std::string::npos);
  EXPECT_EQ(read_rational_matrix(ss), m);
}

TEST(TextFormat, MalformedInput) {
  EXPECT_THROW(parse_integer_matrix("2 2\n1 2 3"), ParseError);
  EXPECT_THROW(parse_integer_matrix("2 2\n1 2 3 4 5"), ParseError);
  EXPECT_THROW(parse_integer_matrix("0 2\n"), ParseError);
  EXPECT_THROW(parse_integer_matrix("2 2\n1 a 3 4"), ParseError);
  EXPECT_THROW(read_file("/nonexistent/definitely/missing"), IoError);
  EXPECT_EQ(parse_vector(format_vector({1, -2, 3})), (IntVec{1, -2, 3}));
}

TEST(Rng, Deterministic) {
  Rng a(42, 7), b(42, 7), c(42, 8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs |= x != c.next_u64();
  }
  EXPECT_TRUE(differs);
  Rng d(42, 7);
  std::vector<double> n1, n2;
  for (int i = 0; i < 11; ++i) n1.push_back(d.normal());
  Rng e(42, 7);
  for (int i = 0; i < 11; ++i) n2.push_back(e.normal());
  EXPECT_EQ(n1, n2);
}

TEST(Rng, DerivedSeedsDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100000; ++i) seen.insert(derive_seed(1234, i));
  EXPECT_EQ(seen.size(), 100000u);
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 1));
}

TEST(Rng, UniformIntRangeAndBalance) {
  Rng rng(9);
  std::vector<int> counts(7, 0);
  const int trials = 70000;
  for (int i = 0; i < trials; ++i) {
    const auto v = rng.uniform_int(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    ++counts[v + 3];
  }
  // binomial 5-sigma band around trials / 7
  const double p = 1.0 / 7, sd = std::sqrt(trials * p * (1 - p));
  for (int c : counts) EXPECT_NEAR(c, trials * p, 5 * sd);
  EXPECT_EQ(rng.uniform_int(5, 5), 5);
  EXPECT_THROW(rng.uniform_int(2, 1), DomainError);
}

TEST(Rng, NormalMoments) {
  Rng rng(77);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  const double mean = s / n, var = s2 / n - mean * mean;
  EXPECT_NEAR(mean, 0, 4 / std::sqrt(n));
  EXPECT_NEAR(var, 1, 4 * std::sqrt(2.0 / n));
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
