#include "gkpt/tgate_fidelity.hpp"

#include <cmath>
#include <gtest/gtest.h>
#include <random>

using namespace gkpt;

TEST(Kappa, HandEvaluatedCases) {
  EXPECT_EQ(kappa(0.0), 0);
  EXPECT_EQ(kappa(kSqrtHalfPi), 1);           // floor(1.5) = 1
  EXPECT_EQ(kappa(-kSqrtHalfPi * 1.1), 1);    // floor(-0.6) = -1, mod 2 = 1
  EXPECT_EQ(kappa(2.0 * kSqrtHalfPi), 0);
  EXPECT_EQ(kappa(-0.4 * kSqrtHalfPi), 0);
}

TEST(Kappa, Periodicity) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-25.0, 25.0);
  for (int i = 0; i < 10000; ++i) {
    const double q1 = dist(rng);
    EXPECT_EQ(kappa(q1 + kSqrtTwoPi), kappa(q1)) << "q1=" << q1;
    const int k = kappa(q1);
    EXPECT_TRUE(k == 0 || k == 1);
  }
}

TEST(Theta, ValuesAndSecantIdentity) {
  EXPECT_DOUBLE_EQ(theta(0), 0.0);
  EXPECT_DOUBLE_EQ(theta(1), kPi / 4.0);
  for (int k : {0, 1}) {
    EXPECT_NEAR(std::sqrt(1.0 + k * k) * std::cos(theta(k)), 1.0, 1e-15);
  }
  EXPECT_THROW(theta(2), std::invalid_argument);
}

TEST(RhoElements, ConjugateSymmetryAndRealDiagonals) {
  const double delta = db_to_delta(8.0);
  const Complex e01 = rho_element_finite(0, 1, delta, delta);
  const Complex e10 = rho_element_finite(1, 0, delta, delta);
  const double scale = std::abs(e01);
  EXPECT_NEAR(std::abs(e01 - std::conj(e10)), 0.0, 1e-9 * scale);

  for (int z : {0, 1}) {
    const Complex diag = rho_element_finite(z, z, delta, delta);
    EXPECT_GT(diag.real(), 0.0);
    EXPECT_NEAR(diag.imag(), 0.0, 1e-9 * diag.real());
  }
}

TEST(RhoElements, AnalyticMatchesPerCellQuadrature) {
  const double delta = db_to_delta(8.0);
  QuadratureConfig analytic;
  QuadratureConfig quad;
  quad.q1_mode = Q1Mode::PerCellQuadrature;
  for (const auto& [z, e] : std::vector<std::pair<int,int>>{{0, 0}, {1, 1}, {0, 1}}) {
    const Complex a = rho_element_finite(z, e, delta, delta, analytic);
    const Complex q = rho_element_finite(z, e, delta, delta, quad);
    const double scale = std::max(std::abs(a), 1e-30);
    EXPECT_NEAR(std::abs(a - q) / scale, 0.0, 1e-7) << z << e;
  }
}

TEST(RhoElements, PerCellNodeRefinementCertificate) {
  // refining the per-cell node count moves the element by less than the
  // target tolerance; the integrand is smooth inside kappa cells
  const double delta = db_to_delta(8.0);
  QuadratureConfig coarse, fine;
  coarse.q1_mode = fine.q1_mode = Q1Mode::PerCellQuadrature;
  coarse.q1_nodes_per_cell = 32;
  fine.q1_nodes_per_cell = 64;
  const Complex a = rho_element_finite(0, 1, delta, delta, coarse);
  const Complex b = rho_element_finite(0, 1, delta, delta, fine);
  EXPECT_LT(std::abs(a - b) / std::abs(b), 1e-6);
}

TEST(RhoElements, IdealAncillaIsSmallSigmaLimit) {
  const double delta = db_to_delta(10.0);
  QuadratureConfig cfg;
  const TgateDmResult ideal = tgate_logical_dm(delta, SigmaSpec::ideal(), cfg);
  for (const double sigma : {1e-2, 1e-3}) {
    const TgateDmResult fin =
        tgate_logical_dm(delta, SigmaSpec::explicit_value(sigma), cfg);
    EXPECT_NEAR(fin.rho.rho00(), ideal.rho.rho00(), 1e-4) << sigma;
    EXPECT_NEAR(fin.rho.rho11(), ideal.rho.rho11(), 1e-4) << sigma;
    EXPECT_NEAR(std::abs(fin.rho.rho01() - ideal.rho.rho01()), 0.0, 1e-4) << sigma;
  }
}

TEST(TgateDm, HermitianNormalizedPsd) {
  const double delta = db_to_delta(9.0);
  for (const SigmaSpec spec : {SigmaSpec::equal(), SigmaSpec::ideal()}) {
    const TgateDmResult dm = tgate_logical_dm(delta, spec);
    EXPECT_TRUE(dm.converged);
    EXPECT_NEAR(dm.rho.trace(), 1.0, 1e-12);
    EXPECT_EQ(dm.rho.rho10(), std::conj(dm.rho.rho01()));
    EXPECT_GT(dm.rho.min_eigenvalue(), -1e-8);
    const double f = logical_fidelity(dm.rho, t_state());
    EXPECT_GE(f, -1e-9);
    EXPECT_LE(f, 1.0 + 1e-9);
  }
}

TEST(TgateFidelity, PaperThresholdAt10dB) {
  const double delta = db_to_delta(10.0);
  EXPECT_GT(tgate_logical_fidelity(delta, SigmaSpec::equal()), 0.90);
  EXPECT_GT(tgate_logical_fidelity(delta, SigmaSpec::ideal()), 0.90);
}

TEST(TgateFidelity, IdealAncillaDominates) {
  for (const double db : {6.0, 10.0}) {
    const double delta = db_to_delta(db);
    const double f_ideal = tgate_logical_fidelity(delta, SigmaSpec::ideal());
    const double f_equal = tgate_logical_fidelity(delta, SigmaSpec::equal());
    EXPECT_GE(f_ideal, f_equal - 1e-6) << db;
  }
}

TEST(TgateFidelity, AccuracyErrorCarriesEstimate) {
  QuadratureConfig cfg;
  cfg.q1_mode = Q1Mode::PerCellQuadrature;
  cfg.q1_nodes_per_cell = 2;  // hopeless for the comb bumps inside each cell
  try {
    tgate_logical_fidelity(db_to_delta(8.0), SigmaSpec::equal(), cfg);
    FAIL() << "expected AccuracyError";
  } catch (const AccuracyError& e) {
    EXPECT_GT(e.achieved_error, 1e-6);
  }
}

TEST(FidelitySweep, MonotoneAndDeterministic) {
  QuadratureConfig cfg;
  const std::vector<SweepRow> rows = fidelity_sweep({6.0, 10.0, 14.0}, SigmaSpec::ideal(), cfg);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_LT(rows[0].fidelity, rows[1].fidelity);
  EXPECT_LT(rows[1].fidelity, rows[2].fidelity);

  const std::vector<SweepRow> twice = fidelity_sweep({10.0, 10.0}, SigmaSpec::ideal(), cfg);
  ASSERT_EQ(twice.size(), 2u);
  EXPECT_EQ(twice[0].fidelity, twice[1].fidelity);
  EXPECT_EQ(twice[0].rho.rho01(), twice[1].rho.rho01());

  EXPECT_TRUE(fidelity_sweep({}, SigmaSpec::ideal(), cfg).empty());
}

TEST(SigmaSpecParse, Roundtrip) {
  EXPECT_EQ(SigmaSpec::parse("equal").mode, SigmaSpec::Mode::Equal);
  EXPECT_EQ(SigmaSpec::parse("ideal").mode, SigmaSpec::Mode::Ideal);
  const SigmaSpec v = SigmaSpec::parse("value:0.25");
  EXPECT_EQ(v.mode, SigmaSpec::Mode::Explicit);
  EXPECT_DOUBLE_EQ(v.value, 0.25);
  EXPECT_THROW(SigmaSpec::parse("bogus"), std::invalid_argument);
  EXPECT_THROW(SigmaSpec::explicit_value(-1.0), std::invalid_argument);
}
