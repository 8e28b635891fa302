#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lp2/critical.hpp"

namespace lp2 {
namespace {

// Brute-force maximizer of the rotation profile on an n-point grid.
double grid_argmax(const Exponent& e, int n) {
  double best = -1.0;
  double arg = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    const double v = std::abs(std::pow(t, e.p() - 1) - t) / (1 + std::pow(t, e.p()));
    if (v > best) {
      best = v;
      arg = t;
    }
  }
  return arg;
}

double profile(double t, double p) { return (std::pow(t, p - 1) - t) / (1 + std::pow(t, p)); }

TEST(ComputeMp, DegenerateAtTwo) {
  const CriticalPoint cp = compute_mp(Exponent(2));
  EXPECT_TRUE(cp.degenerate);
  EXPECT_EQ(cp.mp, 0.0);
  EXPECT_EQ(cp.t0, 0.0);
}

TEST(ComputeMp, ObstructionExponent) {
  const CriticalPoint cp = compute_mp(Exponent(1.16));
  EXPECT_FALSE(cp.degenerate);
  EXPECT_NEAR(cp.t0, 0.073924, 1e-6);
  EXPECT_NEAR(cp.mp, 0.558064, 1e-6);
}

TEST(ComputeMp, ConjugatePairThreeAndThreeHalves) {
  EXPECT_NEAR(compute_mp(Exponent(3)).mp, compute_mp(Exponent(1.5)).mp, 1e-12);
}

TEST(ComputeMp, RejectsNonPositiveTol) { EXPECT_THROW(compute_mp(Exponent(3), 0.0), DomainError); }

TEST(ComputeMp, Invariants) {
  for (double p : {1.05, 1.16, 1.2, 1.3, 1.5, 1.9, 2.1, 3.0, 6.0, 12.0}) {
    const CriticalPoint cp = compute_mp(Exponent(p));
    EXPECT_GT(cp.t0, 0.0) << p;
    EXPECT_LT(cp.t0, 1.0) << p;
    EXPECT_GT(cp.mp, 0.0);
    EXPECT_LT(cp.mp, 1.0);
    EXPECT_NEAR(cp.mp, std::abs(profile(cp.t0, p)), 1e-14 * cp.mp);
    EXPECT_LE(std::abs(cp.derivative_residual), 1e-10) << p;
    EXPECT_NEAR(cp.t0, grid_argmax(Exponent(p), 200000), 1e-5) << p;
  }
}

TEST(ComputeMp, ConjugateSymmetry) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(1.0, 20.0);
  for (int i = 0; i < 200; ++i) {
    double p = u(rng);
    if (p == 1.0) continue;
    const Exponent e(p);
    EXPECT_NEAR(compute_mp(e).mp, compute_mp(e.conjugate()).mp, 1e-11) << p;
  }
}

TEST(PhiDerivative, VanishesAtObstructionMaximizer) {
  EXPECT_NEAR(phi_derivative(0.073924, Exponent(1.16)), 0.0, 1e-4);
  const CriticalPoint cp = compute_mp(Exponent(1.16));
  EXPECT_NEAR(phi_derivative(cp.t0, Exponent(1.16)), 0.0, 1e-10);
}

TEST(PhiDerivative, PositiveBelowMaximizer) {
  const Exponent e(4.0 / 3.0);
  const double t0 = compute_mp(e).t0;
  for (double t = 0.001; t < t0 * 0.999; t += 0.01) {
    const double h = 1e-7;
    const double fd = (profile(t + h, e.p()) - profile(t - h, e.p())) / (2 * h);
    EXPECT_GT(fd, 0.0) << t;
    EXPECT_GT(phi_derivative(t, e), 0.0) << t;
  }
}

TEST(PhiDerivative, MatchesCentralDifferences) {
  for (double p : {1.1, 1.16, 1.3, 1.5, 1.8, 2.5, 4.0, 8.0}) {
    const Exponent e(p);
    for (double t = 0.01; t < 0.99; t += 0.0137) {
      const double h = 1e-6;
      const double fd = (profile(t + h, p) - profile(t - h, p)) / (2 * h);
      const double d = phi_derivative(t, e);
      EXPECT_NEAR(d, fd, std::max(1e-5, 1e-5 * std::abs(fd))) << "p=" << p << " t=" << t;
    }
  }
}

TEST(PhiDerivative, RejectsEndpoints) {
  const Exponent e(1.5);
  EXPECT_THROW(phi_derivative(0.0, e), DomainError);
  EXPECT_THROW(phi_derivative(1.0, e), DomainError);
  EXPECT_THROW(phi_derivative(-0.5, e), DomainError);
}

TEST(Lemma21Bounds, SixFifths) {
  const BoundsReport r = lemma21_bounds(Exponent(6.0 / 5.0));
  EXPECT_NEAR(r.lower, std::pow(1.0 / 7.0, 5.0 / 4.0), 1e-15);
  EXPECT_NEAR(r.upper, std::pow(1.0 / 17.0, 5.0 / 6.0), 1e-15);
  EXPECT_LT(r.lower, r.t0);
  EXPECT_LT(r.t0, r.upper);
  EXPECT_TRUE(r.all_hold);
  EXPECT_TRUE(r.in_hypothesis);
}

TEST(Lemma21Bounds, ThreeHalves) {
  const BoundsReport r = lemma21_bounds(Exponent(1.5));
  EXPECT_NEAR(r.lower, 0.16, 1e-15);
  EXPECT_NEAR(r.upper, std::pow(1.0 / 8.0, 2.0 / 3.0), 1e-15);
  EXPECT_DOUBLE_EQ(r.upper, 0.25);
  EXPECT_EQ(r.exponent_check_lhs, 1.0);
  EXPECT_DOUBLE_EQ(r.exponent_check_rhs, 2.0);
  EXPECT_TRUE(r.all_hold);
}

TEST(Lemma21Bounds, BruteForceMaximizerIsBracketed) {
  const Exponent e(1.3);
  const BoundsReport r = lemma21_bounds(e);
  const double t_brute = grid_argmax(e, 1000000);
  EXPECT_LE(r.lower, t_brute);
  EXPECT_LE(t_brute, r.upper);
  EXPECT_NEAR(r.t0, t_brute, 2e-6);
  EXPECT_TRUE(r.all_hold);
  EXPECT_GT(r.margin, kSafetyMargin);
}

TEST(Lemma21Bounds, MarginIsSmallestSlack) {
  const BoundsReport r = lemma21_bounds(Exponent(1.37));
  EXPECT_EQ(r.margin, std::min({r.t0 - r.lower, r.upper - r.t0, r.exponent_check_rhs - r.exponent_check_lhs}));
}

TEST(Lemma21Bounds, FlagsOutOfHypothesis) {
  EXPECT_FALSE(lemma21_bounds(Exponent(1.1)).in_hypothesis);
  EXPECT_FALSE(lemma21_bounds(Exponent(1.8)).in_hypothesis);
}

TEST(Lemma21Bounds, GridCertificate) {
  for (int i = 0; i <= 500; ++i) {
    const double p = 1.2 + 0.3 * i / 500.0;
    const BoundsReport r = lemma21_bounds(Exponent(p));
    EXPECT_TRUE(r.all_hold) << p;
    EXPECT_GT(r.margin, 0.0);
  }
}

}  // namespace
}  // namespace lp2
