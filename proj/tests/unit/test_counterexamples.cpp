#include <nilequi/counterexamples.hpp>
#include <nilequi/diagnostics.hpp>
#include <nilequi/obstruction.hpp>

#include <gtest/gtest.h>

#include "generators.hpp"

using namespace nilequi;
using nilequi::testing::Gen;

namespace {

std::shared_ptr<const Nilsystem> torus(int n) {
  return std::make_shared<Nilsystem>(NilAlgebra::abelian(n), DilationFamily::scalar(n));
}

}  // namespace

TEST(Counterexamples, Shapes) {
  auto c = counterexample_curve(10);
  EXPECT_EQ(c.dim(), 2);
  const auto& cs = std::get<CantorStaircase>(c.variant());
  EXPECT_EQ(cs.u_coord, 0);
  EXPECT_EQ(cs.psi_coord, 1);
  EXPECT_EQ(cantor_measure().dim(), 1);
  EXPECT_EQ(product_cantor(4).dim(), 4);
  EXPECT_THROW(product_cantor(0), DomainError);
}

TEST(SelfSimilarityGrid, ResidueIsFirstDigitIndicator) {
  auto r = self_similarity_grid(8);
  EXPECT_EQ(r.checked, 3 * 2187);
  EXPECT_EQ(r.failures, 0);
  EXPECT_EQ(r.min_residue, 0);
  EXPECT_EQ(r.max_residue, 1);
  // 3 psi(b/3 + u) - psi(3u) is 1 exactly when the leading digit b is 1
  Gen gen(101);
  for (int trial = 0; trial < 200; ++trial) {
    Rational u(gen.integer(0, 3 * 3 * 3 * 3 * 3 - 1), 729UL);
    u.canonicalize();
    for (int b = 0; b < 3; ++b) EXPECT_EQ(self_similarity_residue(u, b), b == 1 ? 1 : 0);
  }
}

TEST(Counterexamples, VerdictsSeparateWeakFromStrong) {
  auto g1 = NilAlgebra::abelian(1);
  auto g2 = NilAlgebra::abelian(2);
  auto v1 = classify(cantor_measure(), torus_coefficients(DilationFamily::scalar(1), g1), g1);
  EXPECT_EQ(v1.kind, VerdictKind::WeaklyEquidistributed);
  auto v2 = classify(MeasureSpec::curve(counterexample_curve()), torus_coefficients(DilationFamily::scalar(2), g2), g2);
  EXPECT_EQ(v2.kind, VerdictKind::WeaklyEquidistributed);
  ASSERT_TRUE(v2.strong_witness);
  EXPECT_EQ(v2.strong_witness->chi, make_character({0, 1}));
  for (int d = 1; d <= 4; ++d) {
    auto g = NilAlgebra::abelian(d);
    EXPECT_EQ(classify(product_cantor(d), torus_coefficients(DilationFamily::scalar(d), g), g).kind,
              VerdictKind::WeaklyEquidistributed);
  }
}

TEST(CounterexamplesProperty, WeylSumsInvariantUnderTripling) {
  Gen gen(102);
  auto curve = std::make_shared<MeasureSpec>(MeasureSpec::curve(counterexample_curve()));
  auto cantor = std::make_shared<MeasureSpec>(cantor_measure());
  auto prod = std::make_shared<MeasureSpec>(product_cantor(2));
  for (int trial = 0; trial < 30; ++trial) {
    const double t = static_cast<double>(gen.integer(1, 9));
    const int m = static_cast<int>(gen.integer(1, 5));
    const double s = t * std::pow(3.0, m);
    auto k1 = make_character({gen.integer(1, 5)});
    auto k2 = make_character({gen.integer(-3, 3), gen.integer(1, 3)});
    EXPECT_LT(std::abs(weyl_sum(k1, dilate(cantor, torus(1), t)) - weyl_sum(k1, dilate(cantor, torus(1), s))), 1e-9);
    EXPECT_LT(std::abs(weyl_sum(k2, dilate(curve, torus(2), t)) - weyl_sum(k2, dilate(curve, torus(2), s))), 1e-9);
    EXPECT_LT(std::abs(weyl_sum(k2, dilate(prod, torus(2), t)) - weyl_sum(k2, dilate(prod, torus(2), s))), 1e-9);
  }
}

TEST(Counterexamples, StrongFailureIsVisibleNumerically) {
  // the psi-character keeps a non-vanishing transform along t = 3^m
  auto cantor = std::make_shared<MeasureSpec>(cantor_measure());
  const auto base = std::abs(weyl_sum(make_character({1}), dilate(cantor, torus(1), 1.0)));
  EXPECT_GT(base, 0.1);
  for (int m = 1; m <= 8; ++m)
    EXPECT_NEAR(std::abs(weyl_sum(make_character({1}), dilate(cantor, torus(1), std::pow(3.0, m)))), base, 1e-9);
}

TEST(Counterexamples, WeakAverageIsSmall) {
  auto cantor = std::make_shared<MeasureSpec>(cantor_measure());
  Transform tr = [&](double t) { return weyl_sum(make_character({1}), dilate(cantor, torus(1), t)); };
  EXPECT_LE(weak_average_continuous(tr, 3000.0, 0.5, 1.0).value, 0.1);
}
