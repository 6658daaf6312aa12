#include <nilequi/lattice.hpp>
#include <nilequi/unipotent.hpp>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace nilequi;
using nilequi::testing::Gen;

namespace {

NilAlgebra filiform_lattice4() {
  // [e1,e2] = e3, [e1,e3] = 2 e4: integer points close up under products
  return NilAlgebra::create(4, {BracketSpec{0, 1, {0, 0, 1, 0}}, BracketSpec{0, 2, {0, 0, 0, 2}}});
}

std::vector<std::int64_t> random_word(Gen& gen, std::size_t n) {
  std::vector<std::int64_t> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(gen.integer(-3, 3));
  return w;
}

}  // namespace

TEST(LatticeSpec, AcceptsHeisenbergAndAbelian) {
  EXPECT_NO_THROW(LatticeSpec(NilAlgebra::heisenberg(1)));
  EXPECT_NO_THROW(LatticeSpec(NilAlgebra::heisenberg(2)));
  EXPECT_NO_THROW(LatticeSpec(NilAlgebra::abelian(3)));
  EXPECT_NO_THROW(LatticeSpec(filiform_lattice4()));
}

TEST(LatticeSpec, RejectsIntegerPointsThatAreNotASubgroup) {
  // exp(e1) exp(e2) exp(-e1) = exp(e2 + e3 + e4/2) for the standard filiform
  EXPECT_THROW(LatticeSpec(NilAlgebra::filiform(4)), ValidationError);
}

TEST(SecondKind, HeisenbergExplicit) {
  // exp(x e1 + y e2 + z e3) = exp(x e1) exp(y e2) exp((z - xy/2) e3)
  auto g = NilAlgebra::heisenberg(1);
  Vec<Rational> x{2, 3, 1};
  EXPECT_EQ(to_second_kind(g, x), (Vec<Rational>{2, 3, -2}));
}

TEST(SecondKindProperty, RoundTripIsIdentity) {
  Gen gen(41);
  for (const auto& g : {NilAlgebra::heisenberg(1), NilAlgebra::heisenberg(2), filiform_lattice4(), NilAlgebra::filiform(5)}) {
    const auto n = static_cast<std::size_t>(g.dim());
    for (int trial = 0; trial < 50; ++trial) {
      auto x = gen.rational_vector(n);
      EXPECT_EQ(from_second_kind(g, to_second_kind(g, x)), x);
      EXPECT_EQ(to_second_kind(g, from_second_kind(g, x)), x);
    }
  }
}

TEST(Reduction, RepresentativeTimesWordIsOriginal) {
  Gen gen(42);
  auto g = NilAlgebra::heisenberg(1);
  for (int trial = 0; trial < 100; ++trial) {
    GroupElement<Rational> x{gen.rational_vector(3, 20, 7)};
    auto r = reduce_mod_lattice(g, x);
    for (const auto& c : r.representative) {
      EXPECT_GE(c, 0);
      EXPECT_LT(c, 1);
    }
    auto back = group_mul(g, GroupElement<Rational>{from_second_kind(g, r.representative)}, word_element<Rational>(g, r.word));
    EXPECT_EQ(back, x);
  }
}

TEST(Reduction, InvariantUnderRightLatticeMultiplication) {
  Gen gen(43);
  for (const auto& g : {NilAlgebra::heisenberg(1), filiform_lattice4()}) {
    const auto n = static_cast<std::size_t>(g.dim());
    for (int trial = 0; trial < 100; ++trial) {
      GroupElement<Rational> x{gen.rational_vector(n, 20, 7)};
      auto gamma = word_element<Rational>(g, random_word(gen, n));
      EXPECT_EQ(reduce_mod_lattice(g, group_mul(g, x, gamma)).representative, reduce_mod_lattice(g, x).representative);
    }
  }
}

TEST(Reduction, FloatAgreesWithExactAwayFromBoundaries) {
  Gen gen(44);
  auto g = NilAlgebra::heisenberg(1);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = gen.rational_vector(3, 50, 11);
    auto exact = reduce_mod_lattice(g, GroupElement<Rational>{x}).representative;
    bool near_edge = false;
    for (const auto& c : exact) near_edge = near_edge || c == 0;
    if (near_edge) continue;
    Vec<double> xd;
    for (const auto& c : x) xd.push_back(c.get_d());
    auto p = reduce_to_point(g, xd);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(p.coords[i], exact[i].get_d(), 1e-12);
  }
}

TEST(Reduction, FloatRepresentativeStaysInCell) {
  Gen gen(45);
  auto g = NilAlgebra::heisenberg(1);
  for (int trial = 0; trial < 500; ++trial) {
    auto p = reduce_to_point(g, gen.real_vector(3, -1e3, 1e3));
    for (double c : p.coords) {
      EXPECT_GE(c, 0.0);
      EXPECT_LT(c, 1.0);
    }
  }
}

TEST(Reduction, MatrixOracleForHeisenbergWords) {
  // the lattice element of a word is exp(w3 e3) exp(w2 e2) exp(w1 e1)
  auto g = NilAlgebra::heisenberg(1);
  auto w = word_element<Rational>(g, {1, 2, 3});
  Vec<Rational> a{0, 0, 3}, b{0, 2, 0}, c{1, 0, 0};
  using nilequi::testing::heisenberg_matrix_product;
  EXPECT_EQ(w.log, heisenberg_matrix_product(heisenberg_matrix_product(a, b), c));
}

TEST(HaarIntegrate, MassAndCharacters) {
  auto one = haar_integrate([](const NilmanifoldPoint&) { return 1.0; }, 3, 4);
  EXPECT_NEAR(one, 1.0, 1e-14);
  auto chi = haar_integrate([](const NilmanifoldPoint& p) { return nilequi::testing::e(p.coords[0] + 2 * p.coords[2]); }, 3, 8);
  EXPECT_LT(std::abs(chi), 1e-13);
  EXPECT_THROW(haar_integrate([](const NilmanifoldPoint&) { return 1.0; }, 2, 0), DomainError);
}
