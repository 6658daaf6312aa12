#include <nilequi/bch.hpp>
#include <nilequi/unipotent.hpp>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace nilequi;
using nilequi::testing::Gen;

TEST(Dynkin, DegreeOneIsSum) {
  const auto& terms = dynkin_terms(1);
  ASSERT_EQ(terms.size(), 2u);
  for (const auto& t : terms) {
    EXPECT_EQ(t.length, 1);
    EXPECT_EQ(t.coeff, 1);
  }
  EXPECT_EQ(&dynkin_terms(3), &dynkin_terms(3));
  EXPECT_THROW(dynkin_terms(NilAlgebra::kMaxClass + 1), DomainError);
}

TEST(Bch, ThirdOrderTerm) {
  // X + Y + [X,Y]/2 + [X,[X,Y]]/12 with [Y,[Y,X]] = 0 on the filiform algebra
  auto g = NilAlgebra::filiform(4);
  Vec<Rational> x{1, 0, 0, 0}, y{0, 1, 0, 0};
  EXPECT_EQ(bch(g, x, y), (Vec<Rational>{1, 1, Rational(1, 2), Rational(1, 12)}));
}

TEST(Bch, AbelianIsSum) {
  auto g = NilAlgebra::abelian(3);
  Vec<Rational> x{1, Rational(1, 2), -3}, y{2, 2, Rational(1, 3)};
  EXPECT_EQ(bch(g, x, y), x + y);
}

TEST(Bch, HeisenbergClosedForm) {
  auto g = NilAlgebra::heisenberg(1);
  Vec<Rational> x{1, 0, 0}, y{0, 1, 0};
  EXPECT_EQ(bch(g, x, y), (Vec<Rational>{1, 1, Rational(1, 2)}));
}

TEST(Bch, RejectsWrongLength) {
  auto g = NilAlgebra::heisenberg(1);
  EXPECT_THROW(bch(g, Vec<Rational>{1, 0}, Vec<Rational>{0, 1, 0}), DimensionError);
}

TEST(BchProperty, TwoStepMatchesClosedForm) {
  Gen gen(31);
  for (const auto& g : {NilAlgebra::heisenberg(1), NilAlgebra::heisenberg(2)}) {
    for (int trial = 0; trial < 50; ++trial) {
      auto x = gen.rational_vector(static_cast<std::size_t>(g.dim()));
      auto y = gen.rational_vector(static_cast<std::size_t>(g.dim()));
      EXPECT_EQ(bch(g, x, y), nilequi::testing::two_step_bch(g, x, y));
    }
  }
}

TEST(BchProperty, HeisenbergMatchesMatrixProduct) {
  Gen gen(32);
  auto g = NilAlgebra::heisenberg(1);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = gen.rational_vector(3), y = gen.rational_vector(3);
    EXPECT_EQ(bch(g, x, y), nilequi::testing::heisenberg_matrix_product(x, y));
  }
}

TEST(BchProperty, GroupAxioms) {
  Gen gen(33);
  for (const auto& real : standard_realizations()) {
    auto g = real.algebra();
    const auto n = static_cast<std::size_t>(g.dim());
    for (int trial = 0; trial < 20; ++trial) {
      GroupElement<Rational> a{gen.rational_vector(n)}, b{gen.rational_vector(n)}, c{gen.rational_vector(n)};
      EXPECT_EQ(group_mul(g, group_mul(g, a, b), c), group_mul(g, a, group_mul(g, b, c))) << real.name();
      EXPECT_EQ(group_mul(g, a, group_inv(a)), identity<Rational>(g));
      EXPECT_EQ(group_mul(g, a, identity<Rational>(g)), a);
      // exp(sX) exp(tX) = exp((s+t)X)
      auto s = gen.rational(), t = gen.rational();
      EXPECT_EQ(bch(g, scaled(a.log, s), scaled(a.log, t)), scaled(a.log, Rational(s + t)));
    }
  }
}

TEST(BchProperty, FloatMatchesExact) {
  Gen gen(34);
  for (const auto& real : standard_realizations()) {
    auto g = real.algebra();
    const auto n = static_cast<std::size_t>(g.dim());
    for (int trial = 0; trial < 20; ++trial) {
      auto x = gen.rational_vector(n), y = gen.rational_vector(n);
      auto exact = bch(g, x, y);
      auto approx = bch(g, convert<double>(x), convert<double>(y));
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(approx[i], exact[i].get_d(), 1e-12 * std::max(1.0, std::abs(exact[i].get_d())));
    }
  }
}
