#include "gkpt/modular.hpp"

#include <cmath>
#include <gtest/gtest.h>
#include <random>

using namespace gkpt;

TEST(DecomposePosition, HandEvaluatedCases) {
  {
    const ModularCoords c = decompose_position(0.0);
    EXPECT_EQ(c.l, 0);
    EXPECT_EQ(c.m_tilde, 0);
    EXPECT_DOUBLE_EQ(c.u_tilde, 0.0);
  }
  {
    const ModularCoords c = decompose_position(kSqrtPi);
    EXPECT_EQ(c.l, 1);
    EXPECT_EQ(c.m_tilde, 0);
    EXPECT_DOUBLE_EQ(c.u_tilde, 0.0);
  }
  {
    // x = -0.6 sqrt(pi): m = floor(-0.1) = -1, l = 1, m_tilde = -1, u = 0.4 sqrt(pi)
    const ModularCoords c = decompose_position(-0.6 * kSqrtPi);
    EXPECT_EQ(c.l, 1);
    EXPECT_EQ(c.m_tilde, -1);
    EXPECT_NEAR(c.u_tilde, 0.4 * kSqrtPi, 1e-12);
  }
}

TEST(DecomposePosition, BinEdgeConvention) {
  // x = sqrt(pi)/2 evaluates t = x/sqrt(pi) + 1/2 to exactly 1: the upper bin
  // wins and u_tilde = -sqrt(pi)/2.
  const ModularCoords c = decompose_position(kSqrtPi / 2.0);
  EXPECT_EQ(c.l, 1);
  EXPECT_EQ(c.m_tilde, 0);
  EXPECT_DOUBLE_EQ(c.u_tilde, -kSqrtPi / 2.0);
}

TEST(DecomposePosition, ReconstructionIdentity) {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> dist(-40.0, 40.0);
  for (int i = 0; i < 100000; ++i) {
    const double x = dist(rng);
    for (const GaugeOrigin origin : {GaugeOrigin::PlusSqrtPi, GaugeOrigin::MinusSqrtPi}) {
      const ModularCoords c = decompose_position(x, origin);
      EXPECT_GE(c.u_tilde, -kSqrtPi / 2.0);
      EXPECT_LT(c.u_tilde, kSqrtPi / 2.0);
      EXPECT_TRUE(c.l == 0 || c.l == 1);
      const double back = reconstruct_position(c, origin);
      EXPECT_NEAR(back, x, 1e-12 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST(DecomposePosition, GaugeOriginConvention) {
  // |1>_L (x) |0,0>_G maps to +sqrt(pi) under the default origin and to
  // -sqrt(pi) under the mirrored one.
  EXPECT_DOUBLE_EQ(reconstruct_position({1, 0, 0.0}, GaugeOrigin::PlusSqrtPi), kSqrtPi);
  EXPECT_DOUBLE_EQ(reconstruct_position({1, 0, 0.0}, GaugeOrigin::MinusSqrtPi), -kSqrtPi);
  EXPECT_DOUBLE_EQ(logical_bin_center(1, 0, GaugeOrigin::PlusSqrtPi), kSqrtPi);
  EXPECT_DOUBLE_EQ(logical_bin_center(1, 0, GaugeOrigin::MinusSqrtPi), -kSqrtPi);
}

TEST(LogicalDensityMatrixType, NormalizeTraceEigen) {
  const LogicalDensityMatrix rho(3.0, 1.0, Complex(0.5, -0.25));
  const LogicalDensityMatrix n = rho.normalized();
  EXPECT_NEAR(n.trace(), 1.0, 1e-15);
  EXPECT_EQ(n.rho10(), std::conj(n.rho01()));
  // eigenvalues of the normalized matrix stay in [0, 1] for this psd input
  EXPECT_GE(n.min_eigenvalue(), 0.0);
  EXPECT_LE(n.min_eigenvalue(), 0.5);
  EXPECT_THROW(LogicalDensityMatrix(0.0, 0.0, Complex(0.0)).normalized(), std::domain_error);
}

TEST(LogicalFidelity, KnownOverlaps) {
  const LogicalAmplitudes t = t_state();
  // rho = |T><T|
  const LogicalDensityMatrix tt(std::norm(t.a), std::norm(t.b), t.a * std::conj(t.b));
  EXPECT_NEAR(logical_fidelity(tt, t), 1.0, 1e-12);
  // maximally mixed
  const LogicalDensityMatrix mixed(0.5, 0.5, Complex(0.0));
  EXPECT_NEAR(logical_fidelity(mixed, t), 0.5, 1e-15);
  // rho = |0><0| against |T>
  const LogicalDensityMatrix zero(1.0, 0.0, Complex(0.0));
  EXPECT_NEAR(logical_fidelity(zero, t), 0.5, 1e-15);
}

TEST(LogicalFidelity, TargetPhaseInvariance) {
  const LogicalDensityMatrix rho(0.6, 0.4, Complex(0.2, 0.1));
  const LogicalAmplitudes t = t_state();
  const Complex phase = std::polar(1.0, 0.77);
  const LogicalAmplitudes t2{t.a * phase, t.b * phase};
  EXPECT_NEAR(logical_fidelity(rho, t), logical_fidelity(rho, t2), 1e-14);
}

TEST(LogicalFidelity, RejectsUnnormalized) {
  const LogicalDensityMatrix rho(0.9, 0.3, Complex(0.0));
  EXPECT_THROW(logical_fidelity(rho, t_state()), std::invalid_argument);
}

TEST(LogicalDmFromPure, HighSqueezingBasisState) {
  // 25 dB |0_Delta>: essentially all support in even bins
  const double delta = db_to_delta(25.0);
  const GkpWavefunction wave({1.0, 0.0}, delta);
  const DmResult dm = logical_dm_from_pure([&](double x) { return wave(x); },
                                           {.feature_scale = delta});
  EXPECT_TRUE(dm.converged);
  EXPECT_GT(dm.rho.rho00(), 0.999);
  EXPECT_NEAR(dm.rho.trace(), 1.0, 1e-12);
}

TEST(LogicalDmFromPure, TStateFidelityAt20dB) {
  const double delta = db_to_delta(20.0);
  const GkpWavefunction wave(t_state(), delta);
  const DmResult dm = logical_dm_from_pure([&](double x) { return wave(x); },
                                           {.feature_scale = delta});
  EXPECT_TRUE(dm.converged);
  const double f = logical_fidelity(dm.rho, t_state());
  EXPECT_GT(f, 0.99);
  EXPECT_LE(f, 1.0 + 1e-9);
}

TEST(LogicalDmFromPure, FineGridRiemannOracle) {
  // same integral on a fine fixed grid, fully independent of the quadrature
  const double delta = db_to_delta(12.0);
  const GkpWavefunction wave(t_state(), delta);
  const DmResult dm = logical_dm_from_pure([&](double x) { return wave(x); },
                                           {.feature_scale = delta});

  const double du = 1e-4 * kSqrtPi;
  double r00 = 0.0, r11 = 0.0;
  Complex r01(0.0);
  for (long long m = -8; m <= 8; ++m) {
    for (double u = -0.5 * kSqrtPi + 0.5 * du; u < 0.5 * kSqrtPi; u += du) {
      const Complex p0 = wave((2 * m + 0) * kSqrtPi + u);
      const Complex p1 = wave((2 * m + 1) * kSqrtPi + u);
      r00 += du * std::norm(p0);
      r11 += du * std::norm(p1);
      r01 += du * p0 * std::conj(p1);
    }
  }
  const LogicalDensityMatrix oracle = LogicalDensityMatrix(r00, r11, r01).normalized();
  EXPECT_NEAR(dm.rho.rho00(), oracle.rho00(), 1e-6);
  EXPECT_NEAR(dm.rho.rho11(), oracle.rho11(), 1e-6);
  EXPECT_NEAR(std::abs(dm.rho.rho01() - oracle.rho01()), 0.0, 1e-6);
}

TEST(LogicalDmFromPure, GlobalPhaseInvariance) {
  const double delta = db_to_delta(10.0);
  const GkpWavefunction wave(t_state(), delta);
  const DmResult a = logical_dm_from_pure([&](double x) { return wave(x); },
                                          {.feature_scale = delta});
  const DmResult b = logical_dm_from_pure(
      [&](double x) { return std::polar(1.0, 0.9) * wave(x); }, {.feature_scale = delta});
  EXPECT_NEAR(a.rho.rho00(), b.rho.rho00(), 1e-12);
  EXPECT_NEAR(std::abs(a.rho.rho01() - b.rho.rho01()), 0.0, 1e-12);
}

TEST(LogicalDmFromPure, DiagonalSumsToOne) {
  const double delta = db_to_delta(7.0);
  const GkpWavefunction wave(plus_state(), delta);
  const DmResult dm = logical_dm_from_pure([&](double x) { return wave(x); },
                                           {.feature_scale = delta});
  EXPECT_NEAR(dm.rho.rho00() + dm.rho.rho11(), 1.0, 1e-12);
}

TEST(LogicalDmFromPure, DegenerateState) {
  EXPECT_THROW(logical_dm_from_pure([](double) { return Complex(0.0); }, {}),
               std::domain_error);
}
