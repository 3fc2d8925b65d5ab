#include <gtest/gtest.h>

#include <random>

#include "absmin/error.hpp"
#include "absmin/poly.hpp"
#include "support/oracles.hpp"

using absmin::Complex;
using absmin::Poly;

namespace {

Poly real_poly(const std::vector<double>& c) { return Poly::from_real(c); }

Poly random_poly(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> c(degree + 1);
  for (Complex& v : c) v = normal(rng);
  c.back() = 1.0 + std::abs(normal(rng));
  return Poly(c);
}

std::vector<Complex> as_vector(const Poly& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

}  // namespace

TEST(Poly, TrimsTrailingZerosAndReportsDegree) {
  EXPECT_EQ(Poly({1.0, 2.0, 0.0, 0.0}).degree(), 1);
  EXPECT_EQ(Poly().degree(), -1);
  EXPECT_TRUE(Poly({0.0}).is_zero());
  EXPECT_EQ(Poly::monomial(3).degree(), 3);
  EXPECT_THROW(Poly::monomial(-1), absmin::DomainError);
}

TEST(Poly, ArithmeticMatchesHandExpansion) {
  const Poly a{1.0, 1.0};
  const Poly b{-1.0, 1.0};
  EXPECT_EQ(a * b, (Poly{-1.0, 0.0, 1.0}));
  EXPECT_EQ(a + b, (Poly{0.0, 2.0}));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((Poly{2.0, 4.0}).monic(), (Poly{0.5, 1.0}));
  EXPECT_EQ((Poly{1.0, 2.0, 3.0}).derivative(), (Poly{2.0, 6.0}));
}

TEST(Poly, FromRootsExpandsProduct) {
  const std::vector<Complex> r{Complex(0, 1), Complex(0, -1)};
  const Poly p = Poly::from_roots(r);
  EXPECT_NEAR(std::abs(p[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p[2] - 1.0), 0.0, 1e-15);
}

TEST(Poly, RealCoefficientChecks) {
  EXPECT_TRUE((Poly{1.0, 2.0}).is_real());
  EXPECT_FALSE(Poly(std::vector<Complex>{1.0, Complex(0, 1)}).is_real());
  EXPECT_THROW(Poly(std::vector<Complex>{1.0, Complex(0, 1)}).real_coeffs(), absmin::DomainError);
}

TEST(Eval, UnitCircleRootOfQuadratic) {
  const auto [v, d] = absmin::eval_and_derivative(Poly{1.0, 0.0, 1.0}, Complex(0, 1));
  EXPECT_NEAR(std::abs(v), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d - Complex(0, 2)), 0.0, 1e-15);
}

TEST(Eval, PlantDenominatorAtOne) {
  const auto [v, d] = absmin::eval_and_derivative(Poly{0.0, 0.0, 2.0, 0.0, 1.0}, 1.0);
  EXPECT_EQ(v, Complex(3.0));
  EXPECT_EQ(d, Complex(8.0));
}

TEST(Eval, ClusteredSexticVanishesWithDerivative) {
  const auto [v, d] = absmin::eval_and_derivative(real_poly(oracle::kPXYStar), oracle::kZStar);
  EXPECT_LT(std::abs(v), 1e-14);
  EXPECT_LT(std::abs(d), 1e-13);
}

TEST(Eval, ZeroPolynomialIsRejected) {
  EXPECT_THROW(absmin::eval_and_derivative(Poly(), 1.0), absmin::DomainError);
}

TEST(Roots, QuadraticUnitRoots) {
  const auto rs = absmin::roots(Poly{1.0, 0.0, 1.0});
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_LT(oracle::multiset_distance(rs.roots, {Complex(0, 1), Complex(0, -1)}), 1e-14);
}

TEST(Roots, StaticGainClosedLoopHasOnlyImaginaryRoots) {
  // k + 2 s^2 + s^4 = (s^2 + 1 + sqrt(1-k)) (s^2 + 1 - sqrt(1-k)).
  const double k = 0.75;
  const auto rs = absmin::roots(Poly{k, 0.0, 2.0, 0.0, 1.0});
  ASSERT_EQ(rs.roots.size(), 4u);
  const double w1 = std::sqrt(1.5), w2 = std::sqrt(0.5);
  const std::vector<Complex> expected{Complex(0, w1), Complex(0, -w1), Complex(0, w2), Complex(0, -w2)};
  EXPECT_LT(oracle::multiset_distance(rs.roots, expected), 1e-12);
  for (const Complex r : rs.roots) EXPECT_LT(std::abs(r.real()), 1e-12);
}

TEST(Roots, ClusteredSexticSplitsNearCenter) {
  const auto rs = absmin::roots(real_poly(oracle::kPXYStar));
  ASSERT_EQ(rs.roots.size(), 6u);
  for (const Complex r : rs.roots) EXPECT_LT(std::abs(r - oracle::kZStar), 1e-2);
  ASSERT_EQ(rs.clusters.size(), 1u);
  EXPECT_EQ(rs.clusters[0].multiplicity, 6);
  EXPECT_LT(std::abs(rs.clusters[0].center - oracle::kZStar), 1e-2);
}

TEST(Roots, ExactZeroRootsAreDeflated) {
  const auto rs = absmin::roots(Poly{0.0, 0.0, 2.0, 0.0, 1.0});
  EXPECT_EQ(std::count(rs.roots.begin(), rs.roots.end(), Complex(0.0)), 2);
}

TEST(Roots, DegreeZeroIsRejected) {
  EXPECT_THROW(absmin::roots(Poly{3.0}), absmin::DomainError);
  EXPECT_THROW(absmin::roots(Poly()), absmin::DomainError);
}

TEST(Roots, IterationCapRaisesWithBestIterate) {
  absmin::RootOptions options;
  options.max_iterations = 1;
  try {
    absmin::roots(Poly{1.0, 3.0, 2.0, 5.0, 7.0, 1.0}, options);
    FAIL() << "expected ConvergenceError";
  } catch (const absmin::ConvergenceError& e) {
    EXPECT_EQ(e.best_iterate().size(), 5u);
    EXPECT_GT(e.residual(), options.residual_tol);
  }
}

TEST(Roots, AgreeWithCompanionEigenvalues) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly p = random_poly(rng, 1 + trial % 8);
    const auto rs = absmin::roots(p);
    EXPECT_LT(oracle::multiset_distance(rs.roots, oracle::companion_roots(as_vector(p))), 1e-8) << trial;
  }
}

TEST(Abscissa, Examples) {
  EXPECT_NEAR(absmin::abscissa(Poly{-2.0, 1.0, 1.0}), 1.0, 1e-14);
  for (double k : {0.0, 0.25, 0.5, 1.0}) EXPECT_NEAR(absmin::abscissa(Poly{k, 0.0, 2.0, 0.0, 1.0}), 0.0, 1e-7);
  EXPECT_NEAR(absmin::abscissa(real_poly(oracle::kPXYStar)), oracle::kZStar, 1e-2);
}

TEST(Abscissa, ConstantIsDomainError) {
  EXPECT_THROW(absmin::abscissa(Poly{2.0}), absmin::DomainError);
}

TEST(Shift, Examples) {
  EXPECT_EQ(absmin::shift(Poly{0.0, 0.0, 1.0}, 1.0), (Poly{1.0, 2.0, 1.0}));
  EXPECT_EQ(absmin::shift(Poly{1.0, 1.0}, -1.0), (Poly{0.0, 1.0}));
  const Poly t6 = absmin::shift(real_poly(oracle::kPXYStar), oracle::kZStar);
  ASSERT_EQ(t6.degree(), 6);
  for (int j = 0; j < 6; ++j) EXPECT_LT(std::abs(t6[j]), 1e-12) << j;
  EXPECT_NEAR(std::abs(t6[6] - 1.0), 0.0, 1e-15);
}

TEST(PolyProperty, RootsCommuteWithShift) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const Poly p = random_poly(rng, 1 + trial % 8);
    const Complex z0(uni(rng), uni(rng));
    auto moved = absmin::roots(p).roots;
    for (Complex& r : moved) r -= z0;
    EXPECT_LT(oracle::multiset_distance(absmin::roots(absmin::shift(p, z0)).roots, moved), 1e-8) << trial;
    EXPECT_NEAR(absmin::abscissa(absmin::shift(p, z0)), absmin::abscissa(p) - z0.real(), 1e-8) << trial;
  }
}

TEST(PolyProperty, EvaluationResidualIsSmall) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Poly p = random_poly(rng, 1 + trial % 10);
    const auto rs = absmin::roots(p);
    const std::vector<Complex> c = as_vector(p);
    for (const Complex z : rs.roots) {
      const double bound = 1e-10 * p.max_abs_coeff() * std::pow(1.0 + std::abs(z), p.degree());
      EXPECT_LE(std::abs(oracle::evaluate(c, z)), bound) << trial;
    }
  }
}

TEST(PolyProperty, AbscissaOfProductIsMax) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const Poly p = random_poly(rng, 1 + trial % 4);
    const Poly q = random_poly(rng, 1 + (trial / 4) % 4);
    EXPECT_NEAR(absmin::abscissa(p * q), std::max(absmin::abscissa(p), absmin::abscissa(q)), 1e-8) << trial;
  }
}

TEST(PolyProperty, RootFinderIsDeterministic) {
  std::mt19937_64 rng(9);
  const Poly p = random_poly(rng, 7);
  const auto a = absmin::roots(p);
  const auto b = absmin::roots(p);
  EXPECT_EQ(a.roots, b.roots);
  EXPECT_EQ(a.residual, b.residual);
}
