#include <gtest/gtest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "qvcs/coherent_states.hpp"
#include "qvcs/errors.hpp"
#include "qvcs/observables.hpp"

using namespace qvcs;

TEST(EnergyExpectations, MatchReferenceAndClosedForm) {
  const Quaternion q(1.2, 0.7, 1.1, 0.4);
  const ExpectationTable t = qvcs_expectations(q, Spin::plus, 0.8, 60);
  EXPECT_LT(std::abs(t.at("A").numeric - oracle::kEnergyExpectA), 1e-14);
  EXPECT_LE(t.max_abs_diff(), 1e-9);
  EXPECT_THROW(t.at("missing"), IndexError);
}

TEST(EnergyExpectations, GridAgreement) {
  for (double r : {0.0, 0.75, 1.5}) {
    for (double eta : {0.0, 1.0, 4.0}) {
      for (double phi : {0.0, 1.2, kPi}) {
        for (Spin s : {Spin::plus, Spin::minus}) {
          const ExpectationTable t = qvcs_expectations(Quaternion(r, eta, phi, 0.4), s, 1.3, 60);
          EXPECT_LE(t.max_abs_diff(), 1e-9);
        }
      }
    }
  }
}

TEST(QExpectations, NumericMatchesIndependentReference) {
  const QuaternionQ q(1.2, 0.9, 0.7, 2.1);
  const ExpectationTable t = qqvcs_expectations(q, Spin::plus, 0.94, 1.06, 60);
  EXPECT_LT(std::abs(t.at("calA").numeric - oracle::kQFamilyExpectA), 1e-14);
  EXPECT_LT(std::abs(t.at("calA").closed_form - oracle::kQFamilyClosedA), 1e-14);
  EXPECT_NEAR(t.at("F_sum").numeric.real(), 1.0, 1e-15);
}

TEST(QExpectations, ClosedFormsHoldForCommutingWeights) {
  for (double varphi : {0.0, kPi}) {
    const QuaternionQ q(1.2, 0.9, varphi, 2.1);
    for (Spin s : {Spin::plus, Spin::minus}) {
      EXPECT_LE(qqvcs_expectations(q, s, 0.94, 1.06, 60).max_abs_diff(), 1e-9);
    }
  }
  const QuaternionQ q(1.2, 0.9, 0.7, 2.1);
  for (Spin s : {Spin::plus, Spin::minus}) {
    EXPECT_LE(qqvcs_expectations(q, s, 1.1, 1.1, 60).max_abs_diff(), 1e-9);
  }
}

TEST(QExpectations, ClosedFormsDeviateForGenericAngle) {
  // R(n) and Q^n do not commute once varphi is off the axis and omega_+ != omega_-.
  const QuaternionQ q(1.2, 0.9, 0.7, 2.1);
  const ExpectationTable t = qqvcs_expectations(q, Spin::plus, 0.94, 1.06, 60);
  EXPECT_GT(t.at("calA").abs_diff, 1e-3);
  EXPECT_LT(std::abs(t.at("calA").numeric.imag() - t.at("calA").closed_form.imag()), 1e-12);
}

TEST(FWeight, SumsToOne) {
  for (double r : {0.0, 0.7, 3.0}) {
    EXPECT_NEAR(f_weight(Spin::plus, r, 0.8, 1.2) + f_weight(Spin::minus, r, 0.8, 1.2), 1.0,
                1e-15);
  }
  EXPECT_DOUBLE_EQ(f_weight(Spin::plus, 1.0, 1.0, 1.0), 0.5);
  EXPECT_THROW(f_weight(Spin::plus, 1.0, 0.0, 1.0), DomainError);
}

TEST(Uncertainty, MatchesReferenceAndBound) {
  const UncertaintyResult u =
      uncertainty_product(Quaternion(1.0, 0.7, 1.1, 0.4), Spin::plus, FockTruncation::standard(60));
  EXPECT_NEAR(u.lhs, oracle::kUncertaintyLhs, 1e-13);
  EXPECT_NEAR(u.bound, 1.0 / 16.0, 1e-15);
  EXPECT_TRUE(u.holds);
}

TEST(Uncertainty, HoldsAcrossGrid) {
  for (double r : {0.0, 0.5, 1.0, 1.5}) {
    for (double eta : {0.0, 0.8, 2.4, 5.0}) {
      for (double phi : {0.0, 1.0, 2.0}) {
        for (Spin s : {Spin::plus, Spin::minus}) {
          const UncertaintyResult u = uncertainty_product(Quaternion(r, eta, phi, 0.3), s,
                                                          FockTruncation::standard(60));
          EXPECT_GE(u.lhs - 1.0 / 16.0, -1e-12);
        }
      }
    }
  }
}

TEST(Uncertainty, GeneralizedWeights) {
  const FockTruncation t = FockTruncation::from_weights(
      [] {
        std::vector<double> w{0.0};
        for (int n = 1; n <= 62; ++n) w.push_back(n + 0.1 * n * n);
        return w;
      }());
  const UncertaintyResult u = uncertainty_product(Quaternion(0.8, 0.5, 1.0, 0.0), Spin::minus, t);
  EXPECT_TRUE(u.holds);
  EXPECT_GT(u.bound, 1.0 / 16.0);
}

TEST(Uncertainty, QFamilyRegime) {
  for (double theta : {kPi / 4.0, 3.0 * kPi / 4.0}) {
    for (double varphi : {0.0, 1.0, 2.0}) {
      for (Spin s : {Spin::plus, Spin::minus}) {
        const QDispersion d = qqvcs_dispersion(QuaternionQ(1.5, theta, varphi, 0.4), s, 1.0, 1.0, 60);
        EXPECT_GE(d.lhs, 1.0 / 16.0 - 1e-12);
      }
    }
  }
}

TEST(Quadratures, CanonicalCommutator) {
  const FockTruncation t = FockTruncation::standard(60);
  const QuadraturePair ops = quadrature_pair(t);
  const SpinorState v = generalized_qvcs(Quaternion(1.0, 0.5, 0.5, 0.5), Spin::plus, t);
  EXPECT_LT(commutator_residual(ops, v), 1e-12);
  EXPECT_NEAR(dispersion(ops.number, SpinorState::basis(60, Spin::plus, 3)), 0.0, 1e-15);
}

TEST(Quadratures, GeneralizedStateTailCheck) {
  EXPECT_THROW(generalized_qvcs(Quaternion(4.0, 0.0, 0.0, 0.0), Spin::plus,
                                FockTruncation::standard(10)),
               TailError);
}

TEST(Expect, ShapeMismatch) {
  EXPECT_THROW(expect(FockOperator::identity(3), SpinorState::zero(4)), ShapeError);
}
