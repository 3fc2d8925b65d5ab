#include <gtest/gtest.h>

#include <random>

#include "absmin/analysis.hpp"
#include "absmin/error.hpp"
#include "support/oracles.hpp"

using absmin::Complex;
using absmin::Controller;
using absmin::Plant;
using absmin::Poly;

namespace {

const Plant& benchmark() {
  static const Plant plant = Plant::two_mass_spring();
  return plant;
}

Controller xystar() { return Controller::from_params(2, oracle::kXYStar); }

std::vector<double> poly_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST(StepResponse, BenchmarkSettlesAroundSixteenSeconds) {
  const auto r = absmin::step_response(benchmark(), xystar(), 30.0, 1e-3);
  EXPECT_NEAR(r.final_value, oracle::kFinalValue, 1e-10);
  EXPECT_TRUE(r.settled);
  EXPECT_NEAR(r.settling_time, 16.0, 2.0);
  EXPECT_EQ(r.times.size(), r.values.size());
  EXPECT_NEAR(r.values.back(), oracle::kFinalValue, 0.02 * oracle::kFinalValue);
}

TEST(StepResponse, FirstOrderMatchesAnalyticSolution) {
  const Plant plant(Poly{1.0}, Poly{1.0, 1.0});
  const auto r = absmin::step_response(plant, Controller(Poly{1.0}, Poly{0.0}), 10.0, 1e-3);
  EXPECT_NEAR(r.final_value, 1.0, 1e-15);
  EXPECT_NEAR(r.settling_time, std::log(50.0), 2e-3);
  double worst = 0.0;
  for (std::size_t i = 0; i < r.times.size(); ++i)
    worst = std::max(worst, std::abs(r.values[i] - oracle::first_order_step(r.times[i])));
  EXPECT_LT(worst, 1e-6);
}

TEST(StepResponse, UnstableOrMarginalLoopIsRejected) {
  EXPECT_THROW(absmin::step_response(benchmark(), Controller(Poly{1.0}, Poly{0.5})), absmin::DomainError);
  EXPECT_THROW(absmin::step_response(benchmark(), xystar(), 30.0, 0.0), absmin::DomainError);
}

TEST(SettlingTime, BandAndUnsettledCases) {
  const std::vector<double> t{0, 1, 2, 3, 4};
  bool settled = false;
  EXPECT_EQ(absmin::settling_time(t, {0.0, 0.5, 1.5, 1.01, 1.0}, 1.0, 0.02, &settled), 3.0);
  EXPECT_TRUE(settled);
  EXPECT_EQ(absmin::settling_time(t, {0.0, 0.5, 1.5, 1.01, 1.5}, 1.0, 0.02, &settled), 4.0);
  EXPECT_FALSE(settled);
}

TEST(Pseudozero, LinearPolynomialDistance) {
  EXPECT_NEAR(absmin::pseudozero_distance(Poly{0.0, 1.0}, 0.05), 0.05 / std::sqrt(1.0025), 1e-15);
}

TEST(Pseudozero, RootsHaveZeroDistance) {
  EXPECT_NEAR(absmin::pseudozero_distance(Poly{1.0, 0.0, 1.0}, Complex(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(absmin::pseudozero_distance(Poly{-2.0, 1.0}, 2.0), 0.0, 1e-15);
}

TEST(Pseudozero, ClusteredSexticNearbyPointIsWithinTolerance) {
  EXPECT_LE(absmin::pseudozero_distance(Poly::from_real(oracle::kPXYStar), Complex(-0.7746, 0.15)), 1e-4);
}

TEST(Pseudozero, BruteForceProbeFindsNearbyRoot) {
  const Complex z(-0.7746, 0.15);
  std::mt19937_64 rng(71);
  std::normal_distribution<double> normal(0.0, 1.0);
  bool found = false;
  for (int trial = 0; trial < 100000 && !found; ++trial) {
    Eigen::VectorXd d(7);
    for (int j = 0; j < 7; ++j) d(j) = normal(rng);
    d *= 1e-4 / d.norm();
    std::vector<Complex> c(7);
    for (int j = 0; j < 7; ++j) c[j] = oracle::kPXYStar[j] + d(j);
    for (const Complex r : oracle::companion_roots(c)) found = found || std::abs(r - z) < 1e-2;
  }
  EXPECT_TRUE(found);
}

TEST(Pseudozero, LeadingCoefficientCanBeFrozen) {
  absmin::PseudozeroOptions frozen;
  frozen.perturb_leading = false;
  const Poly p{1.0, 0.0, 1.0};
  const Eigen::VectorXd d = absmin::pseudozero_perturbation(p, Complex(0.1, 1.2), frozen);
  EXPECT_EQ(d(2), 0.0);
  EXPECT_GE(absmin::pseudozero_distance(p, Complex(0.1, 1.2), frozen),
            absmin::pseudozero_distance(p, Complex(0.1, 1.2)));
}

TEST(Pseudozero, RejectsComplexCoefficients) {
  EXPECT_THROW(absmin::pseudozero_distance(Poly(std::vector<Complex>{1.0, {0, 1}}), 0.0), absmin::DomainError);
}

TEST(PseudozeroGrid, LinearPolynomialNeighborhood) {
  const auto grid = absmin::pseudozero_grid(Poly{0.0, 1.0}, {-1, 1, -1, 1}, 201, 201, 0.1);
  EXPECT_TRUE(grid.member(100, 100));
  EXPECT_TRUE(grid.member(105, 100));   // re = 0.05
  EXPECT_FALSE(grid.member(112, 100));  // re = 0.12
  EXPECT_FALSE(grid.member(0, 0));
}

TEST(PseudozeroGrid, ClusteredSexticRegionContainsCenter) {
  const Poly p = Poly::from_real(oracle::kPXYStar);
  const auto grid = absmin::pseudozero_grid(p, {-1.0, -0.55, -0.25, 0.25}, 200, 200, 1e-4);
  int members = 0;
  double nearest = INFINITY;
  int ix_best = 0, iy_best = 0;
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      members += grid.member(ix, iy);
      const double d = std::abs(grid.point(ix, iy) - Complex(oracle::kZStar, 0.0));
      if (d < nearest) {
        nearest = d;
        ix_best = ix;
        iy_best = iy;
      }
    }
  }
  EXPECT_GT(members, 0);
  EXPECT_TRUE(grid.member(ix_best, iy_best));
}

TEST(PseudozeroGrid, ZeroEpsilonKeepsOnlyRootPoints) {
  const auto grid = absmin::pseudozero_grid(Poly{-0.25, 0.0, 1.0}, {-1, 1, -1, 1}, 9, 9, 0.0);
  for (int iy = 0; iy < 9; ++iy)
    for (int ix = 0; ix < 9; ++ix) {
      const Complex z = grid.point(ix, iy);
      const bool at_root = std::abs(z - 0.5) < 1e-12 || std::abs(z + 0.5) < 1e-12;
      EXPECT_EQ(grid.member(ix, iy), at_root) << z;
    }
}

TEST(PseudozeroGrid, RejectsBadArguments) {
  EXPECT_THROW(absmin::pseudozero_grid(Poly{0.0, 1.0}, {1, -1, -1, 1}, 10, 10, 0.1), absmin::DomainError);
  EXPECT_THROW(absmin::pseudozero_grid(Poly{0.0, 1.0}, {-1, 1, -1, 1}, 1, 10, 0.1), absmin::DomainError);
  EXPECT_THROW(absmin::pseudozero_grid(Poly{0.0, 1.0}, {-1, 1, -1, 1}, 10, 10, -1.0), absmin::DomainError);
}

TEST(AnalysisProperty, PseudozeroDistanceAgainstSampledPerturbations) {
  std::mt19937_64 rng(73);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<double> c(n + 1);
    for (double& v : c) v = normal(rng);
    const Complex z(uni(rng), trial % 4 == 0 ? 0.0 : uni(rng));
    const Poly p = Poly::from_real(c);
    const double dist = absmin::pseudozero_distance(p, z);
    EXPECT_NEAR(dist, oracle::min_norm_distance(c, z), 1e-10 * std::max(1.0, dist)) << trial;

    const std::vector<double> dmin = poly_vector(absmin::pseudozero_perturbation(p, z));
    std::vector<Complex> moved(n + 1);
    for (int j = 0; j <= n; ++j) moved[j] = c[j] + dmin[j];
    EXPECT_LT(std::abs(oracle::evaluate(moved, z)), 1e-10 * std::max(1.0, std::pow(std::abs(z), n))) << trial;

    for (int s = 0; s < 5; ++s) {
      const Eigen::VectorXd d = oracle::random_annihilator(c, z, rng, 0.5);
      std::vector<Complex> q(n + 1);
      for (int j = 0; j <= n; ++j) q[j] = c[j] + d(j);
      if (std::abs(oracle::evaluate(q, z)) > 1e-6) continue;
      EXPECT_LE(dist, d.norm() * (1 + 1e-12)) << trial;
    }
  }
}

TEST(AnalysisProperty, MembershipIsNestedInEpsilon) {
  const Poly p = Poly::from_real(oracle::kPXYStar);
  const absmin::Region region{-1.0, -0.55, -0.25, 0.25};
  const auto small = absmin::pseudozero_grid(p, region, 60, 60, 1e-5);
  const auto large = absmin::pseudozero_grid(p, region, 60, 60, 1e-4);
  int small_count = 0, large_count = 0;
  for (int iy = 0; iy < 60; ++iy)
    for (int ix = 0; ix < 60; ++ix) {
      if (small.member(ix, iy)) EXPECT_TRUE(large.member(ix, iy));
      small_count += small.member(ix, iy);
      large_count += large.member(ix, iy);
    }
  EXPECT_LT(small_count, large_count);
}

TEST(RoundSignificant, HalvesAwayFromZero) {
  EXPECT_EQ(absmin::round_significant(4.64758001544890, 5), 4.6476);
  EXPECT_EQ(absmin::round_significant(0.216, 5), 0.216);
  EXPECT_EQ(absmin::round_significant(-8.6, 5), -8.6);
  EXPECT_EQ(absmin::round_significant(1.25, 2), 1.3);
  EXPECT_EQ(absmin::round_significant(-1.25, 2), -1.3);
  EXPECT_EQ(absmin::round_significant(0.0, 3), 0.0);
  EXPECT_EQ(absmin::round_significant(123456.0, 2), 120000.0);
}

TEST(Fragility, FiveDigitRoundingMovesThePoles) {
  const auto report = absmin::fragility_experiment(benchmark(), xystar(), 5);
  const std::vector<double> rounded{7.0, 4.6476, 0.216, 1.6731, -8.6};
  EXPECT_EQ(report.rounded.params(), rounded);
  const std::vector<Complex> expected{-0.9405,          {-0.8163, 0.1489}, {-0.8163, -0.1489},
                                      -0.7500,          {-0.6622, 0.0786}, {-0.6622, -0.0786}};
  EXPECT_LT(oracle::multiset_distance(report.rounded_roots, expected), 1e-3);
  EXPECT_NEAR(report.max_displacement, 0.166, 1e-3);
}

TEST(Fragility, ManyDigitsChangeNothing) {
  const auto report = absmin::fragility_experiment(benchmark(), xystar(), 16);
  const auto a = report.rounded.params(), b = report.nominal.params();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-15 * std::abs(b[i]));
  // Six coincident roots are only resolved to about 1e-2.
  EXPECT_LT(oracle::multiset_distance(report.rounded_roots, report.nominal_roots), 1e-2);
}

TEST(Fragility, RejectsBadDigitsAndUnstableLoops) {
  EXPECT_THROW(absmin::fragility_experiment(benchmark(), xystar(), 0), absmin::DomainError);
  EXPECT_THROW(absmin::fragility_experiment(benchmark(), Controller(Poly{1.0}, Poly{0.5}), 5),
               absmin::DomainError);
}
