#include <gtest/gtest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "qvcs/errors.hpp"
#include "qvcs/linalg.hpp"
#include "qvcs/quadrature.hpp"

using namespace qvcs;

TEST(GaussLaguerre, TwentyNodeRuleMatchesReference) {
  const GaussRule g = gauss_laguerre(20);
  EXPECT_NEAR(g.nodes[0], oracle::kLaguerre20Node0, 1e-15);
  EXPECT_NEAR(g.nodes[19] / oracle::kLaguerre20Node19, 1.0, 1e-14);
  EXPECT_NEAR(g.weights[0] / oracle::kLaguerre20Weight0, 1.0, 1e-14);
  EXPECT_NEAR(g.weights[19] / oracle::kLaguerre20Weight19, 1.0, 1e-12);
  EXPECT_EQ(g.exact_degree(), 39u);
}

TEST(GaussLaguerre, LargeRuleIntegratesFactorialMoments) {
  const GaussRule g = gauss_laguerre(200);
  CompensatedSum w;
  for (double x : g.weights) w.add(x);
  EXPECT_NEAR(w.value(), 1.0, 1e-14);
  for (int n : {1, 5, 20, 40}) {
    CompensatedSum s;
    for (std::size_t i = 0; i < g.size(); ++i) {
      s.add(std::exp(g.log_weights[i] + n * std::log(g.nodes[i]) - std::lgamma(n + 1.0)));
    }
    EXPECT_NEAR(s.value(), 1.0, 1e-12) << "n = " << n;
  }
}

TEST(GaussLegendre, ExactForPolynomials) {
  const GaussRule g = gauss_legendre(8);
  for (int k = 0; k <= 15; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
    const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
    EXPECT_NEAR(s, exact, 1e-14) << "k = " << k;
  }
  EXPECT_EQ(gauss_legendre(1).nodes[0], 0.0);
  EXPECT_THROW(gauss_legendre(0), ConfigError);
}

TEST(PeriodicTrapezoid, ExactForLowFourierModes) {
  const GaussRule g = periodic_trapezoid(12);
  for (int k = 0; k < 12; ++k) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * std::polar(1.0, k * g.nodes[i]);
    EXPECT_LT(std::abs(s - (k == 0 ? 2.0 * kPi : 0.0)), 1e-13) << "k = " << k;
  }
}

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1.0);
}

TEST(HalfLine, AdaptiveIntegral) {
  EXPECT_NEAR(integrate_half_line([](double r) { return r * std::exp(-r * r); }), 0.5, 1e-14);
}

TEST(DensitySpec, WeightFunctionIsConstant) {
  const DensitySpec d(1.7);
  for (double r : {0.0, 0.5, 2.0}) EXPECT_NEAR(d.weight_function(r), 2.0 / (kPi * 1.7), 1e-15);
  EXPECT_NEAR(integrate_half_line([&](double r) { return r * d.density(r); }), 1.0, 1e-13);
  EXPECT_THROW(DensitySpec(0.0), DomainError);
}
