#include "gkpt/quadrature.hpp"

#include <cmath>
#include <gtest/gtest.h>

#include "gkpt/constants.hpp"

using namespace gkpt;

namespace {

double integrate(const QuadratureRule& r, double (*f)(double)) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}

}  // namespace

TEST(GaussLegendre, ExactForPolynomials) {
  // 5-point rule is exact to degree 9: int_{-1}^{1} x^8 dx = 2/9
  const QuadratureRule& r = gauss_legendre(5);
  EXPECT_NEAR(integrate(r, [](double x) { return std::pow(x, 8); }), 2.0 / 9.0, 1e-14);
  EXPECT_NEAR(integrate(r, [](double x) { return x * x * x; }), 0.0, 1e-15);
}

TEST(GaussLegendre, WeightsSumToLength) {
  for (int n : {1, 2, 7, 33, 64, 129}) {
    const QuadratureRule& r = gauss_legendre(n);
    double s = 0.0;
    for (double w : r.weights) s += w;
    EXPECT_NEAR(s, 2.0, 1e-13) << "n=" << n;
  }
}

TEST(GaussLegendre, MappedInterval) {
  const QuadratureRule r = gauss_legendre(16, 0.0, 2.0);
  EXPECT_NEAR(integrate(r, [](double x) { return x * x; }), 8.0 / 3.0, 1e-12);
}

TEST(GaussHermite, MomentsOfTheWeight) {
  const QuadratureRule& r = gauss_hermite(20);
  double m0 = 0.0, m2 = 0.0, m4 = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double x = r.nodes[i], w = r.weights[i];
    m0 += w;
    m2 += w * x * x;
    m4 += w * x * x * x * x;
  }
  EXPECT_NEAR(m0, kSqrtPi, 1e-12);
  EXPECT_NEAR(m2, 0.5 * kSqrtPi, 1e-12);
  EXPECT_NEAR(m4, 0.75 * kSqrtPi, 1e-12);
}

TEST(GaussHermite, OscillatoryClosedForm) {
  // int e^{-t^2} cos(bt) dt = sqrt(pi) e^{-b^2/4}
  const double b = 3.0;
  const QuadratureRule& r = gauss_hermite(40);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::cos(b * r.nodes[i]);
  EXPECT_NEAR(s, kSqrtPi * std::exp(-b * b / 4.0), 1e-12);
}

TEST(GaussHermite, HighOrderStable) {
  const QuadratureRule& r = gauss_hermite(256);
  double m0 = 0.0;
  for (double w : r.weights) m0 += w;
  EXPECT_NEAR(m0, kSqrtPi, 1e-10);
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
}

TEST(CompositeGaussLegendre, NarrowGaussianAgainstErf) {
  // int over [-1, 1] of exp(-x^2 / (2 s^2)), s = 0.02
  const double s = 0.02;
  const QuadratureRule r = composite_gauss_legendre(-1.0, 1.0, 32, s);
  double got = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    got += r.weights[i] * std::exp(-r.nodes[i] * r.nodes[i] / (2.0 * s * s));
  }
  const double expected = s * kSqrtTwoPi;  // erf terms are 1 to ~1e-300
  EXPECT_NEAR(got, expected, 1e-12 * expected);
}

TEST(CompositeGaussLegendre, OscillatoryPhaseRate) {
  // int over [0, 4] of cos(50 x) = sin(200)/50
  const QuadratureRule r = composite_gauss_legendre(0.0, 4.0, 16, 0.0, 50.0);
  double got = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) got += r.weights[i] * std::cos(50.0 * r.nodes[i]);
  EXPECT_NEAR(got, std::sin(200.0) / 50.0, 1e-10);
}

TEST(CompositeGaussLegendre, RespectsMinimumNodes) {
  const QuadratureRule r = composite_gauss_legendre(-1.0, 1.0, 200, 0.0);
  EXPECT_GE(r.size(), 200u);
}
