#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle_values.hpp"
#include "qvcs/errors.hpp"
#include "qvcs/quaternion.hpp"

using namespace qvcs;

namespace {

double rel_diff(const Mat2& a, const Mat2& b, double scale) {
  return max_abs(a - b) / std::max(1.0, scale);
}

}  // namespace

TEST(Quaternion, PowerMatchesReference) {
  const Quaternion q(1.2, 0.7, 1.1, 0.4);
  const Mat2 p = power(q, 5);
  EXPECT_LT(std::abs(p(0, 0) - oracle::kQ5_00), 1e-12);
  EXPECT_LT(std::abs(p(0, 1) - oracle::kQ5_01), 1e-12);
  EXPECT_LT(std::abs(p(1, 0) - oracle::kQ5_10), 1e-12);
  EXPECT_LT(std::abs(p(1, 1) - oracle::kQ5_11), 1e-12);
}

TEST(Quaternion, ClosedFormPowerAgreesWithIteratedProduct) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> r_dist(0.0, 1.5);
  std::uniform_real_distribution<double> eta_dist(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> phi_dist(0.0, kPi);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Quaternion q(r_dist(rng), eta_dist(rng), phi_dist(rng), eta_dist(rng));
    const Mat2 m = to_matrix(q);
    Mat2 iter = Mat2::Identity();
    for (std::size_t n = 0; n <= 50; ++n) {
      worst = std::max(worst, rel_diff(power(q, n), iter, std::pow(q.r(), n)));
      iter = m * iter;
    }
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Quaternion, SigmaIsHermitianInvolution) {
  for (double phi : {0.0, 0.3, 1.5, kPi}) {
    for (double psi : {0.0, 1.0, 4.0}) {
      const Mat2 s = sigma_n(phi, psi);
      EXPECT_LT(max_abs(s * s - Mat2::Identity()), 1e-15);
      EXPECT_LT(max_abs(s - s.adjoint()), 1e-15);
    }
  }
}

TEST(Quaternion, CartesianFormMatchesPolar) {
  const Quaternion q(0.9, 2.1, 0.6, 5.0);
  const Eigen::Vector4d x = q.cartesian();
  EXPECT_LT(max_abs(cartesian_matrix(x(0), x(1), x(2), x(3)) - to_matrix(q)), 1e-15);
  EXPECT_NEAR(x.norm(), 0.9, 1e-15);
}

TEST(Quaternion, DaggerProductIsModulusSquared) {
  const Quaternion q(1.3, 0.4, 2.0, 1.0);
  EXPECT_LT(max_abs(to_matrix(q) * dagger(q) - 1.69 * Mat2::Identity()), 1e-14);
  EXPECT_LT(max_abs(dagger(q) - to_matrix(q).adjoint()), 1e-15);
}

TEST(Quaternion, UnitPowerHasUnitModulus) {
  const Quaternion q(2.0, 0.8, 1.2, 0.3);
  const Mat2 u = unit_power(q, 7);
  EXPECT_LT(max_abs(u * u.adjoint() - Mat2::Identity()), 1e-14);
}

TEST(Quaternion, FullTurnIsStoredAsZero) {
  const Quaternion q(1.0, 2.0 * kPi, 0.5, 2.0 * kPi);
  EXPECT_EQ(q.eta(), 0.0);
  EXPECT_EQ(q.psi(), 0.0);
}

TEST(Quaternion, RejectsOutOfDomainInput) {
  EXPECT_THROW(Quaternion(-1.0, 0.0, 0.0, 0.0), DomainError);
  EXPECT_THROW(Quaternion(1.0, 7.0, 0.0, 0.0), DomainError);
  EXPECT_THROW(Quaternion(1.0, 0.0, 3.5, 0.0), DomainError);
  EXPECT_THROW(Quaternion(1.0, 0.0, 0.0, -0.1), DomainError);
  EXPECT_THROW(Quaternion(std::nan(""), 0.0, 0.0, 0.0), DomainError);
}

TEST(QuaternionQ, DiagonalConjugateUsesShiftedAzimuth) {
  const double r = 1.1, theta = 0.8, phi1 = 2.0, varphi = 0.9, phi2 = 0.5;
  const Mat2 u = diagonal_conjugate(r, theta, phi1, varphi, phi2);
  const QuaternionQ shifted(r, theta, varphi, phi1 - kPi / 2.0);
  EXPECT_LT(max_abs(u - to_matrix(shifted)), 1e-14);
  // The unshifted azimuth varrho = phi1 does not reproduce the conjugation.
  const QuaternionQ literal(r, theta, varphi, phi1);
  EXPECT_GT(max_abs(u - to_matrix(literal)), 1e-3);
}

TEST(QuaternionQ, Su2FactorIsUnitaryWithUnitDeterminant) {
  const Mat2 u = su2_factor(0.3, 1.7, 2.2);
  EXPECT_LT(max_abs(u * u.adjoint() - Mat2::Identity()), 1e-15);
  EXPECT_LT(std::abs(u.determinant() - 1.0), 1e-15);
}
