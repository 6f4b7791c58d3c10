#include <gtest/gtest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "qvcs/errors.hpp"
#include "qvcs/resolution.hpp"

using namespace qvcs;

TEST(Moments, ScalarFamilyResiduals) {
  const RadialQuadrature quad = RadialQuadrature::gauss(200);
  for (double w : {0.5, 0.875, 1.25, 1.625, 2.0}) {
    for (std::size_t n = 0; n <= 40; ++n) EXPECT_LE(moment_residual(n, w, quad), 1e-10);
  }
}

TEST(Moments, AdaptiveReferenceAgrees) {
  EXPECT_NEAR(moment_ratio(7, 1.3, RadialQuadrature::adaptive()), oracle::kMoment7, 1e-12);
  EXPECT_NEAR(moment_ratio(7, 1.3, RadialQuadrature::gauss(200)), oracle::kMoment7, 1e-13);
}

TEST(Moments, CapacityIsEnforced) {
  EXPECT_THROW(moment_ratio(20, 1.0, RadialQuadrature::gauss(10)), CapacityError);
  EXPECT_NO_THROW(moment_ratio(19, 1.0, RadialQuadrature::gauss(10)));
}

TEST(Moments, QFamilyIdentities) {
  const RadialQuadrature quad = RadialQuadrature::gauss(200);
  for (auto [wp, wm] : {std::pair{0.94, 1.06}, std::pair{0.8, 1.2}, std::pair{1.0, 1.0}}) {
    const QMomentParams p{(wp + wm) / 2.0, wp, wm};
    for (Spin s : {Spin::plus, Spin::minus}) {
      for (std::size_t n = 0; n <= 25; ++n) EXPECT_LE(qqvcs_moment_residual(n, p, s, quad), 1e-10);
    }
  }
  EXPECT_THROW(qqvcs_moment_value(1, {1.0, 0.9, 1.2}, Spin::plus, quad), ConfigError);
}

TEST(Angular, OrthogonalityIntegral) {
  const AngularGrid grid{32, 8, 8};
  for (std::size_t n : {0u, 3u, 9u}) {
    EXPECT_LT(max_abs(angular_orthogonality(n, n, grid) - 8.0 * kPi * kPi * Mat2::Identity()),
              1e-8);
  }
  for (std::size_t k = 1; k <= 5; ++k) {
    EXPECT_LT(max_abs(angular_orthogonality(4 + k, 4, grid)), 1e-8);
    EXPECT_LT(max_abs(angular_orthogonality(4, 4 + k, grid)), 1e-8);
  }
  EXPECT_THROW(angular_orthogonality(10, 2, AngularGrid{8, 8, 8}), ResolutionError);
}

TEST(Identity, EnergyFamilyResolvesIdentity) {
  IdentityFamily fam;
  fam.kind = CSKind::energy_qvcs;
  fam.omega = 1.0;
  const IdentityReport r = assemble_identity(fam, RadialQuadrature::gauss(200),
                                             AngularGrid::for_truncation(30), 30, 20);
  EXPECT_LE(r.interior_error, 1e-8);
  EXPECT_LE(r.offdiag_max, 1e-8);
  EXPECT_EQ(r.radial_nodes, 200u);
  EXPECT_EQ(r.grid.n_phase, 128u);
  EXPECT_LT(r.assembled.hermiticity_residual(), 1e-12);
}

TEST(Identity, QAndDiagonalFamilies) {
  for (CSKind kind : {CSKind::q_qvcs, CSKind::vcs_diagonal}) {
    IdentityFamily fam;
    fam.kind = kind;
    fam.omega_plus = 0.8;
    fam.omega_minus = 1.2;
    fam.omega_c = 1.0;
    const IdentityReport r = assemble_identity(fam, RadialQuadrature::gauss(200),
                                               AngularGrid::for_truncation(20), 20, 15);
    EXPECT_LE(r.interior_error, 1e-8) << to_string(kind);
  }
}

TEST(Identity, RefinementLadderDecreases) {
  IdentityFamily fam;
  fam.kind = CSKind::energy_qvcs;
  const auto steps = identity_refinement(fam, RadialQuadrature::gauss(200), 20, 12);
  ASSERT_EQ(steps.size(), 3u);
  EXPECT_TRUE(strictly_decreasing(steps));
  EXPECT_LE(steps.back().interior_error, 1e-8);
  EXPECT_FALSE(strictly_decreasing({{6, 1.0}, {12, 1.0}}));
}

TEST(Identity, RequiresGaussRadialRule) {
  IdentityFamily fam;
  EXPECT_THROW(assemble_identity(fam, RadialQuadrature::gauss(5), AngularGrid::for_truncation(30),
                                 30, 20),
               CapacityError);
}
