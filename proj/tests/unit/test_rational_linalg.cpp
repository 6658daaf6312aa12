#include <nilequi/exact_linalg.hpp>
#include <nilequi/errors.hpp>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace nilequi;
using nilequi::testing::Gen;

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
  EXPECT_EQ(parse_rational(" 6/3 "), Rational(2));
  EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1.5", "1/0", "abc", "1//2", "/3", "1/", "1e3"})
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
}

TEST(Rational, FloorMatchesDefinition) {
  EXPECT_EQ(floor(Rational(7, 2)), 3);
  EXPECT_EQ(floor(Rational(-7, 2)), -4);
  EXPECT_EQ(floor(Rational(-4)), -4);
}

TEST(Rational, Int64ConversionChecksRange) {
  EXPECT_EQ(to_int64(Integer(-42)), -42);
  Integer huge("123456789012345678901234567890");
  EXPECT_THROW(to_int64(huge), std::overflow_error);
}

TEST(ExactLinalg, RankOfDependentRows) {
  std::vector<Vec<Rational>> rows{{1, 2, 3}, {2, 4, 6}, {0, 1, Rational(1, 2)}};
  EXPECT_EQ(rational_rank(rows), 2u);
  EXPECT_TRUE(in_span(rows, {{1, 3, Rational(7, 2)}}));
  EXPECT_FALSE(in_span(rows, {{0, 0, 1}}));
}

TEST(ExactLinalg, SolveSquareSystem) {
  Matrix<Rational> a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 3;
  auto x = solve(a, {3, Rational(1, 2)});
  EXPECT_EQ(x[0], Rational(17, 10));
  EXPECT_EQ(x[1], Rational(-2, 5));
}

TEST(ExactLinalg, IntegerKernelOfRationalLine) {
  // (1, alpha) with alpha = 3/7: kernel spanned by (3, -7) up to sign
  Matrix<Rational> m(1, 2);
  m(0, 0) = 1;
  m(0, 1) = Rational(3, 7);
  auto basis = integer_kernel(m);
  ASSERT_EQ(basis.size(), 1u);
  auto k = canonical_sign(primitive_part(basis[0]));
  EXPECT_EQ(k, (std::vector<Integer>{3, -7}));
}

TEST(ExactLinalg, FullRankHasTrivialKernel) {
  Matrix<Rational> m(2, 2);
  m(0, 0) = 1;
  m(1, 1) = 1;
  EXPECT_TRUE(integer_kernel(m).empty());
  EXPECT_FALSE(smallest_kernel_vector(m, 20).has_value());
}

TEST(ExactLinalg, EmptyMatrixKernelIsEverything) {
  Matrix<Rational> m(0, 3);
  EXPECT_EQ(integer_kernel(m).size(), 3u);
  auto k = smallest_kernel_vector(m, 5);
  ASSERT_TRUE(k);
  EXPECT_EQ(*k, (std::vector<Integer>{0, 0, 1}));
}

TEST(ExactLinalgProperty, KernelBasisAnnihilatesAndHasRightRank) {
  Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rows = static_cast<std::size_t>(gen.integer(0, 3));
    const auto cols = static_cast<std::size_t>(gen.integer(1, 4));
    Matrix<Rational> m(rows, cols);
    std::vector<Vec<Rational>> rv;
    for (std::size_t r = 0; r < rows; ++r) {
      auto v = gen.rational_vector(cols, 3, 3);
      if (gen.integer(0, 3) == 0) v.assign(cols, Rational(0));
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[c];
      rv.push_back(v);
    }
    auto basis = integer_kernel(m);
    EXPECT_EQ(basis.size(), cols - rational_rank(rv));
    for (const auto& b : basis) {
      Vec<Rational> bq(b.begin(), b.end());
      EXPECT_TRUE(is_zero(m.apply(bq)));
    }
  }
}

TEST(ExactLinalgProperty, SmallestKernelVectorMatchesBruteForce) {
  Gen gen(12);
  for (int trial = 0; trial < 150; ++trial) {
    const auto cols = static_cast<std::size_t>(gen.integer(2, 3));
    const auto rows = static_cast<std::size_t>(gen.integer(1, static_cast<long>(cols) - 1));
    Matrix<Rational> m(rows, cols);
    std::vector<Vec<Rational>> rv;
    for (std::size_t r = 0; r < rows; ++r) {
      auto v = gen.rational_vector(cols, 4, 3);
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[c];
      rv.push_back(v);
    }
    auto brute = nilequi::testing::brute_kernel(rv, cols, 12);
    auto fast = smallest_kernel_vector(m, 12);
    ASSERT_EQ(brute.has_value(), fast.has_value());
    if (brute) {
      std::vector<Integer> b(brute->begin(), brute->end());
      EXPECT_EQ(b, *fast);
    }
  }
}

TEST(ExactLinalgProperty, PrimitivePartHasUnitContent) {
  Gen gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto v = gen.int_vector(3, -30, 30);
    if (v == std::vector<long>(3, 0)) continue;
    std::vector<Integer> z(v.begin(), v.end());
    auto p = primitive_part(z);
    Integer g = 0;
    for (const auto& x : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    EXPECT_EQ(g, 1);
    auto c = canonical_sign(p);
    auto lead = std::find_if(c.begin(), c.end(), [](const Integer& x) { return x != 0; });
    EXPECT_GT(*lead, 0);
  }
}
