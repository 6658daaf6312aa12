#include <nilequi/exact_linalg.hpp>
#include <nilequi/obstruction.hpp>

#include <gtest/gtest.h>

#include <numeric>

#include "generators.hpp"
#include "oracles.hpp"

using namespace nilequi;
using nilequi::testing::Gen;

namespace {

TorusCoefficients scalar_torus(int n) { return torus_coefficients(DilationFamily::scalar(n), NilAlgebra::abelian(n)); }

MeasureSpec poly(int dim, std::vector<Vec<Rational>> coeffs) { return MeasureSpec::curve(Curve::polynomial(dim, std::move(coeffs))); }

std::vector<Integer> ints(std::vector<long> v) { return {v.begin(), v.end()}; }

// curve in T^3 whose non-constant coefficients span a random subspace of the given rank
MeasureSpec low_rank_curve(Gen& gen, std::size_t rank, int degree, std::vector<Vec<Rational>>& directions) {
  directions.clear();
  for (std::size_t r = 0; r < rank; ++r) directions.push_back(gen.rational_vector(3, 3, 3));
  std::vector<Vec<Rational>> coeffs{gen.rational_vector(3)};
  for (int j = 1; j <= degree; ++j) {
    Vec<Rational> c(3, Rational(0));
    for (const auto& d : directions) c = c + scaled(d, Rational(gen.integer(-2, 2)));
    coeffs.push_back(c);
  }
  return poly(3, coeffs);
}

}  // namespace

TEST(Character, Basics) {
  auto chi = make_character({0, -3, 2});
  EXPECT_FALSE(chi.trivial());
  EXPECT_TRUE(make_character({0, 0}).trivial());
  EXPECT_EQ(chi.height(), 3);
  EXPECT_EQ(chi.dchi({Rational(1, 2), Rational(1, 3), 1}), 1);
  EXPECT_EQ(to_int64(chi), (std::vector<std::int64_t>{0, -3, 2}));
  Character big{{Integer("100000000000000000000")}};
  EXPECT_THROW(to_int64(big), std::overflow_error);
}

TEST(PrimitiveCharacters, OrderAndCount) {
  auto h1 = primitive_characters(2, 1);
  ASSERT_EQ(h1.size(), 4U);
  EXPECT_EQ(h1[0].k, ints({0, 1}));
  EXPECT_EQ(h1[1].k, ints({1, -1}));
  EXPECT_EQ(h1[2].k, ints({1, 0}));
  EXPECT_EQ(h1[3].k, ints({1, 1}));
  // primitive vectors up to sign, counted by gcd
  for (long H = 1; H <= 6; ++H) {
    std::size_t count = 0;
    for (long a = -H; a <= H; ++a)
      for (long b = -H; b <= H; ++b)
        if (std::gcd(a, b) == 1) ++count;
    EXPECT_EQ(primitive_characters(2, H).size(), count / 2);
  }
}

TEST(WeakCondition, Examples) {
  auto A = scalar_torus(2);
  auto w = check_weak_condition(MeasureSpec::dirac({Rational(1, 2), Rational(1, 2)}), A, make_character({1, 0}));
  EXPECT_FALSE(w.satisfied);
  EXPECT_EQ(w.z, (std::vector<Rational>{Rational(1, 2)}));

  auto c = check_weak_condition(poly(2, {{0, Rational(2, 5)}, {1, 0}}), A, make_character({0, 1}));
  EXPECT_FALSE(c.satisfied);
  EXPECT_EQ(c.z, (std::vector<Rational>{Rational(2, 5)}));

  auto A1 = scalar_torus(1);
  for (long k = 1; k <= 5; ++k) EXPECT_TRUE(check_weak_condition(MeasureSpec::cantor(), A1, make_character({k})).satisfied);
  EXPECT_THROW(check_weak_condition(MeasureSpec::cantor(), A1, make_character({0})), DomainError);
}

TEST(AnalyticCondition, Examples) {
  auto A = scalar_torus(2);
  auto parabola = Curve::polynomial(2, std::vector<Vec<Rational>>{{0, 0}, {1, 0}, {0, 1}});
  for (const auto& chi : primitive_characters(2, 3)) EXPECT_TRUE(check_analytic_condition(parabola, A, chi));
  // (u, alpha u) is annihilated by (p, q) exactly when p + q alpha = 0
  auto line = Curve::polynomial(2, std::vector<Vec<Rational>>{{0, 0}, {1, Rational(2, 3)}});
  EXPECT_FALSE(check_analytic_condition(line, A, make_character({2, -3})));
  EXPECT_TRUE(check_analytic_condition(line, A, make_character({3, -2})));
  auto constant = Curve::polynomial(2, std::vector<Vec<Rational>>{{Rational(1, 7), 0}});
  for (const auto& chi : primitive_characters(2, 2)) EXPECT_FALSE(check_analytic_condition(constant, A, chi));
  auto two = Curve::polynomial(2, {PolySegment{0, Rational(1, 2), {Vec<Rational>{0, 0}, Vec<Rational>{1, 0}}},
                                   PolySegment{Rational(1, 2), 1, {Vec<Rational>{0, 0}, Vec<Rational>{0, 1}}}});
  EXPECT_THROW(check_analytic_condition(two, A, make_character({1, 0})), ValidationError);
  EXPECT_THROW(check_analytic_condition(Curve::cantor(2, 0, 1), A, make_character({1, 0})), UndecidableError);
}

TEST(TangentCondition, Examples) {
  auto A = scalar_torus(2);
  auto parabola = Curve::polynomial(2, std::vector<Vec<Rational>>{{0, 0}, {1, 0}, {0, 1}});
  EXPECT_TRUE(check_tangent_condition(parabola, A, make_character({1, 2})));
  EXPECT_FALSE(check_tangent_condition(Curve::cantor(2, 0, 1), A, make_character({0, 1})));
  EXPECT_TRUE(check_tangent_condition(Curve::cantor(2, 0, 1), A, make_character({1, 0})));
  auto diag = Curve::polynomial(2, std::vector<Vec<Rational>>{{0, 0}, {1, 1}});
  EXPECT_FALSE(check_tangent_condition(diag, A, make_character({1, -1})));
  auto opaque = Curve::callable(2, [](double u) { return Vec<double>{u, u * u}; });
  EXPECT_THROW(check_tangent_condition(opaque, A, make_character({1, 0})), UndecidableError);
}

TEST(Classify, Examples) {
  auto A = scalar_torus(2);
  auto g = NilAlgebra::abelian(2);
  auto eq = classify(poly(2, {{0, 0}, {1, 0}, {0, 1}}), A, g);
  EXPECT_EQ(eq.kind, VerdictKind::Equidistributed);
  EXPECT_EQ(eq.criterion, Criterion::Analytic);
  EXPECT_FALSE(eq.sufficient_only);

  auto cantor = classify(MeasureSpec::cantor(), scalar_torus(1), NilAlgebra::abelian(1));
  EXPECT_EQ(cantor.kind, VerdictKind::WeaklyEquidistributed);
  ASSERT_TRUE(cantor.strong_witness);
  EXPECT_EQ(cantor.strong_witness->chi.k, ints({1}));

  auto ob = classify(poly(2, {{0, Rational(1, 2)}, {1, 0}}), A, g);
  EXPECT_EQ(ob.kind, VerdictKind::Obstructed);
  ASSERT_TRUE(ob.witness);
  EXPECT_EQ(ob.witness->chi.k, ints({0, 1}));
  EXPECT_EQ(ob.witness->z, (std::vector<Rational>{Rational(1, 2)}));
  EXPECT_TRUE(verify_witness(poly(2, {{0, Rational(1, 2)}, {1, 0}}), A, ob));

  auto line = classify(poly(2, {{0, 0}, {1, Rational(2, 3)}}), A, g);
  EXPECT_EQ(line.kind, VerdictKind::Obstructed);
  EXPECT_EQ(line.witness->chi.k, ints({2, -3}));
}

TEST(Classify, CantorCurveAndProducts) {
  auto A = scalar_torus(2);
  auto g = NilAlgebra::abelian(2);
  auto curve = classify(MeasureSpec::curve(Curve::cantor(2, 0, 1)), A, g);
  EXPECT_EQ(curve.kind, VerdictKind::WeaklyEquidistributed);
  EXPECT_EQ(curve.criterion, Criterion::Tangent);
  EXPECT_EQ(curve.strong_witness->chi.k, ints({0, 1}));

  auto prod = classify(MeasureSpec::product({MeasureSpec::cantor(), MeasureSpec::cantor()}), A, g);
  EXPECT_EQ(prod.kind, VerdictKind::WeaklyEquidistributed);
  EXPECT_EQ(prod.criterion, Criterion::NotApplicable);

  auto mixed = MeasureSpec::product({MeasureSpec::cantor(), MeasureSpec::dirac({Rational(1, 2)})});
  auto v = classify(mixed, A, g);
  EXPECT_EQ(v.kind, VerdictKind::Obstructed);
  EXPECT_EQ(v.witness->chi.k, ints({0, 1}));
  EXPECT_EQ(v.witness->z, (std::vector<Rational>{Rational(1, 2)}));
  EXPECT_TRUE(verify_witness(mixed, A, v));
}

TEST(Classify, FlagsAndModes) {
  auto g = NilAlgebra::abelian(2);
  // only the constant term survives: every character obstructs
  DilationFamily constant({Matrix<Rational>::identity(2)});
  auto A0 = torus_coefficients(constant, g);
  auto deg = classify(poly(2, {{0, 0}, {1, 0}, {0, 1}}), A0, g);
  EXPECT_EQ(deg.kind, VerdictKind::Obstructed);
  EXPECT_TRUE(deg.degenerate);
  EXPECT_TRUE(deg.sufficient_only);

  ClassifyOptions discrete;
  discrete.parameter = ParameterMode::Discrete;
  auto d = classify(MeasureSpec::dirac({Rational(1, 3), 0}), scalar_torus(2), g, discrete);
  EXPECT_EQ(d.parameter, ParameterMode::Discrete);
  ASSERT_TRUE(d.witness_rational);
  EXPECT_TRUE(*d.witness_rational);

  auto opaque = MeasureSpec::curve(Curve::callable(2, [](double u) { return Vec<double>{u, u}; }));
  EXPECT_THROW(classify(opaque, scalar_torus(2), g), UndecidableError);
  EXPECT_THROW(classify(MeasureSpec::cantor(), scalar_torus(2), g), DimensionError);
}

TEST(Classify, ConstantTermExample) {
  // rho_t = B0 + t B1 with B0 = [[1,0],[0,0]], B1 = [[0,0],[1,0]] and phi(u) = (u, 0)
  Matrix<Rational> b0(2, 2), b1(2, 2);
  b0(0, 0) = 1;
  b1(1, 0) = 1;
  auto g = NilAlgebra::abelian(2);
  auto A = torus_coefficients(DilationFamily({b0, b1}), g);
  auto v = classify(poly(2, {{0, 0}, {1, 0}}), A, g);
  EXPECT_EQ(v.kind, VerdictKind::Obstructed);
  EXPECT_TRUE(v.sufficient_only);
  EXPECT_EQ(v.witness->chi.k, ints({1, 0}));
}

TEST(ClassifyProperty, WitnessIsMinimalAndReverifies) {
  Gen gen(81);
  auto A = scalar_torus(3);
  auto g = NilAlgebra::abelian(3);
  std::vector<Vec<Rational>> dirs;
  for (int trial = 0; trial < 60; ++trial) {
    const auto rank = static_cast<std::size_t>(gen.integer(0, 2));
    auto nu = low_rank_curve(gen, rank, static_cast<int>(gen.integer(1, 3)), dirs);
    auto v = classify(nu, A, g);
    ASSERT_EQ(v.kind, VerdictKind::Obstructed);
    EXPECT_TRUE(verify_witness(nu, A, v));
    const auto& pp = std::get<PiecewisePolynomial>(std::get<CurvePushforward>(nu.variant()).curve.variant());
    std::vector<Vec<Rational>> rows(pp.segments[0].coeffs.begin() + 1, pp.segments[0].coeffs.end());
    auto brute = nilequi::testing::brute_kernel(rows, 3, 60);
    if (!v.height_bound) {
      ASSERT_TRUE(brute);
      EXPECT_EQ(v.witness->chi.k, ints(*brute));
    }
  }
}

TEST(ClassifyProperty, FullRankCurvesAreEquidistributed) {
  Gen gen(82);
  auto A = scalar_torus(3);
  auto g = NilAlgebra::abelian(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Vec<Rational>> c{gen.rational_vector(3)};
    for (int j = 0; j < 3; ++j) c.push_back(gen.rational_vector(3));
    if (rational_rank({c[1], c[2], c[3]}) < 3) continue;
    EXPECT_EQ(classify(poly(3, c), A, g).kind, VerdictKind::Equidistributed);
  }
}

TEST(ClassifyProperty, EnumerationAgreesWithExactReduction) {
  Gen gen(83);
  auto A = scalar_torus(3);
  auto g = NilAlgebra::abelian(3);
  ClassifyOptions en;
  en.enumerate = true;
  en.height = 6;
  std::vector<Vec<Rational>> dirs;
  for (int trial = 0; trial < 30; ++trial) {
    auto nu = low_rank_curve(gen, static_cast<std::size_t>(gen.integer(1, 3)), 2, dirs);
    auto exact = classify(nu, A, g);
    auto listed = classify(nu, A, g, en);
    EXPECT_EQ(listed.height_bound, 6);
    if (exact.kind == VerdictKind::Obstructed && exact.witness->chi.height() > 6) {
      EXPECT_NE(listed.kind, VerdictKind::Obstructed);
    } else {
      EXPECT_EQ(exact.kind, listed.kind);
      if (exact.witness) EXPECT_EQ(exact.witness->chi, listed.witness->chi);
    }
  }
}

TEST(ObstructionProperty, ScalingCharactersPreservesChecks) {
  Gen gen(84);
  auto A = scalar_torus(2);
  std::vector<MeasureSpec> specs{poly(2, {{0, 0}, {1, Rational(2, 3)}}), poly(2, {{1, 0}, {0, 1}, {1, 0}}),
                                 MeasureSpec::dirac({Rational(1, 5), Rational(2, 5)}), MeasureSpec::curve(Curve::cantor(2, 0, 1))};
  for (const auto& nu : specs)
    for (const auto& chi : primitive_characters(2, 3)) {
      const long p = gen.integer(2, 5) * (gen.integer(0, 1) ? 1 : -1);
      Character scaled_chi{chi.k};
      for (auto& x : scaled_chi.k) x *= p;
      EXPECT_EQ(check_weak_condition(nu, A, chi).satisfied, check_weak_condition(nu, A, scaled_chi).satisfied);
      const auto& curve = std::visit([](const auto& x) -> const Curve* {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, CurvePushforward>) return &x.curve;
        return nullptr;
      }, nu.variant());
      if (curve)
        EXPECT_EQ(check_tangent_condition(*curve, A, chi), check_tangent_condition(*curve, A, scaled_chi));
    }
}

TEST(ObstructionProperty, TangentImpliesAnalytic) {
  Gen gen(85);
  auto A = scalar_torus(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Vec<Rational>> c;
    const auto deg = gen.integer(0, 3);
    for (long j = 0; j <= deg; ++j) c.push_back(gen.integer(0, 1) ? gen.rational_vector(2) : Vec<Rational>{gen.rational(), 0});
    auto phi = Curve::polynomial(2, c);
    for (const auto& chi : primitive_characters(2, 2))
      if (check_tangent_condition(phi, A, chi)) EXPECT_TRUE(check_analytic_condition(phi, A, chi));
  }
}
