#include "gkpt/comb_algebra.hpp"

#include <cmath>
#include <gtest/gtest.h>
#include <random>

using namespace gkpt;

TEST(LatticeStepType, Values) {
  EXPECT_DOUBLE_EQ(LatticeStep{0}.value(), kSqrtPi);
  EXPECT_NEAR(LatticeStep{-1}.value(), kSqrtHalfPi, 1e-15);
  EXPECT_NEAR(LatticeStep{-2}.value(), kSqrtPi / 2.0, 1e-15);
}

TEST(BeamSplitter, MapsBasisPoints) {
  IdealComb2 in{{0}, {}};
  in.amps[{0, 0}] = 1.0;   // (0, 0) -> (0, 0)
  in.amps[{1, 1}] = 0.5;   // (sqrt(pi), sqrt(pi)) -> (0, sqrt(2 pi))
  const IdealComb2 out = beam_splitter_5050(in);
  EXPECT_EQ(out.step.half_log2, -1);
  EXPECT_EQ(out.amps.at({0, 0}), Complex(1.0));
  EXPECT_EQ(out.amps.at({0, 2}), Complex(0.5));
  // (n2 - n1, n1 + n2) = (0, 2) sits at positions (0, 2 sqrt(pi/2)) = (0, sqrt(2 pi))
  EXPECT_NEAR(2 * out.step.value(), std::sqrt(2.0 * kPi), 1e-12);
}

TEST(BeamSplitter, NormPreserved) {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  IdealComb2 in{{0}, {}};
  for (long long n1 = -4; n1 <= 4; ++n1) {
    for (long long n2 = -4; n2 <= 4; ++n2) {
      in.amps[{n1, n2}] = Complex(dist(rng), dist(rng));
    }
  }
  const IdealComb2 out = beam_splitter_5050(in);
  EXPECT_NEAR(out.norm2(), in.norm2(), 1e-13 * in.norm2());
}

TEST(BeamSplitter, FourTermStructureOfTheJointState) {
  // T (x) psi through the splitter: every output point falls into one of the
  // four families (a, b, e^{i pi/4} a, e^{i pi/4} b) predicted by the
  // closed-form expansion; verified term by term at truncation 8.
  const LogicalAmplitudes psi = LogicalAmplitudes{0.8, Complex(0.36, 0.48)}.normalized();
  const LogicalAmplitudes t = t_state();
  const int trunc = 8;
  const IdealComb2 joint = tensor(make_logical_comb(t, trunc), make_logical_comb(psi, trunc));
  const IdealComb2 out = beam_splitter_5050(joint);

  std::map<std::pair<long long, long long>, Complex> expected;
  for (long long n1 = -trunc; n1 <= trunc; ++n1) {
    for (long long n2 = -trunc; n2 <= trunc; ++n2) {
      const Complex ta = (((n1 % 2) + 2) % 2 == 0) ? t.a : t.b;
      const Complex pa = (((n2 % 2) + 2) % 2 == 0) ? psi.a : psi.b;
      expected[{n2 - n1, n1 + n2}] += ta * pa;
    }
  }
  EXPECT_EQ(out.amps.size(), expected.size());
  for (const auto& [key, val] : expected) {
    const auto it = out.amps.find(key);
    ASSERT_NE(it, out.amps.end());
    EXPECT_NEAR(std::abs(it->second - val), 0.0, 1e-14);
  }
}

TEST(Homodyne, ConditionalCombsMatchBranchAnalysis) {
  // kappa = 0 branch: terms a at even and e^{i pi/4} b at odd multiples of
  // sqrt(2 pi), shifted by -q1; kappa = 1 branch swaps the roles.
  const LogicalAmplitudes psi = plus_state();
  const LogicalAmplitudes t = t_state();
  const int trunc = 8;
  const IdealComb2 out =
      beam_splitter_5050(tensor(make_logical_comb(t, trunc), make_logical_comb(psi, trunc)));

  for (long long j : {0LL, 2LL, -2LL}) {  // kappa = 0 outcomes
    const IdealComb1 cond = homodyne_x_condition(out, CombMode::A, j);
    for (const auto& [n, amp] : cond.amps) {
      // positions n*sqrt(pi/2); even multiples of sqrt(2 pi) sit at n = 4k - j
      const long long r = (((n + j) % 4) + 4) % 4;
      ASSERT_TRUE(r == 0 || r == 2);
      if (std::llabs(n) > 2 * trunc - std::llabs(j) - 2) continue;  // truncation edge
      if (r == 0) {
        EXPECT_NEAR(std::abs(amp - t.a * psi.a), 0.0, 1e-14);
      } else {
        EXPECT_NEAR(std::abs(amp - t.b * psi.b), 0.0, 1e-14);
      }
    }
  }
  for (long long j : {1LL, -1LL, 3LL}) {  // kappa = 1 outcomes
    const IdealComb1 cond = homodyne_x_condition(out, CombMode::A, j);
    for (const auto& [n, amp] : cond.amps) {
      const long long r = (((n + j) % 4) + 4) % 4;
      ASSERT_TRUE(r == 0 || r == 2);
      if (std::llabs(n) > 2 * trunc - std::llabs(j) - 2) continue;
      if (r == 0) {
        EXPECT_NEAR(std::abs(amp - t.b * psi.a), 0.0, 1e-14);  // e^{i pi/4} a / sqrt2...
      } else {
        EXPECT_NEAR(std::abs(amp - t.a * psi.b), 0.0, 1e-14);
      }
    }
  }
}

TEST(Homodyne, OffSupportAndOffLattice) {
  IdealComb2 state{{0}, {}};
  state.amps[{0, 0}] = 1.0;
  const IdealComb1 zero = homodyne_x_condition(state, CombMode::A, 5LL);
  EXPECT_TRUE(zero.amps.empty());
  EXPECT_THROW(homodyne_x_condition(state, CombMode::A, 0.4 * kSqrtPi), LatticeError);
  EXPECT_NO_THROW(homodyne_x_condition(state, CombMode::A, 0.0));
}

TEST(CombOps, SqueezeDisplaceShear) {
  IdealComb1 comb{{0}, {{0, Complex(1.0)}, {1, Complex(0.5)}}};
  const IdealComb1 squeezed = apply_usq(comb);
  EXPECT_EQ(squeezed.step.half_log2, -1);
  EXPECT_EQ(squeezed.amps.at(1), Complex(0.5));

  const IdealComb1 shifted = apply_displacement_x(comb, 2.0 * kSqrtPi);
  EXPECT_EQ(shifted.amps.at(2), Complex(1.0));
  EXPECT_EQ(shifted.amps.at(3), Complex(0.5));
  EXPECT_THROW(apply_displacement_x(comb, 0.3), LatticeError);

  // shear preserves per-point magnitudes and multiplies e^{i kappa x^2/2}
  const IdealComb1 sheared = apply_shear(comb, 1.0);
  EXPECT_NEAR(std::abs(sheared.amps.at(1)), 0.5, 1e-15);
  EXPECT_NEAR(std::arg(sheared.amps.at(1)), kPi / 2.0, 1e-12);  // x^2 = pi
}

TEST(CombOps, KappaIntegerValueBelowEq5) {
  // sqrt(2/pi) q1 is an integer for every populated measurement outcome
  const IdealComb2 out = beam_splitter_5050(
      tensor(make_logical_comb(t_state(), 6), make_logical_comb(plus_state(), 6)));
  for (const auto& [key, amp] : out.amps) {
    const double q1 = key.first * out.step.value();
    const double v = std::sqrt(2.0 / kPi) * q1;
    EXPECT_NEAR(v, std::round(v), 1e-12);
  }
}

TEST(VerifyTgate, IdentityOnBasisState) {
  EXPECT_LT(verify_tgate_identity({1.0, 0.0}, 8), 1e-12);
  EXPECT_LT(verify_tgate_identity({0.0, 1.0}, 8), 1e-12);
}

TEST(VerifyTgate, SuperposedInputsBothBranches) {
  EXPECT_LT(verify_tgate_identity(plus_state(), 8), 1e-12);
  EXPECT_LT(verify_tgate_identity(t_state(), 8), 1e-12);
  const LogicalAmplitudes skew = LogicalAmplitudes{1.0, Complex(0.3, -0.4)}.normalized();
  EXPECT_LT(verify_tgate_identity(skew, 8), 1e-12);
}

TEST(VerifyTgate, DeviationNonIncreasingWithTruncation) {
  const LogicalAmplitudes amps = plus_state();
  const double d6 = verify_tgate_identity(amps, 6);
  const double d8 = verify_tgate_identity(amps, 8);
  const double d10 = verify_tgate_identity(amps, 10);
  EXPECT_LE(d8, d6 + 1e-14);
  EXPECT_LE(d10, d8 + 1e-14);
}

TEST(VerifyTgate, RejectsTinyTruncation) {
  EXPECT_THROW(verify_tgate_identity(plus_state(), 2), std::invalid_argument);
}
