#include <gtest/gtest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "qvcs/coherent_states.hpp"
#include "qvcs/errors.hpp"

using namespace qvcs;

TEST(Tail, PoissonTailMatchesReference) {
  EXPECT_NEAR(poisson_tail(10, 2.0), oracle::kPoissonTail10Mean2, 1e-18);
  EXPECT_EQ(poisson_tail(5, 0.0), 0.0);
  const std::size_t n = suggest_n_max(2.0, 1e-12);
  EXPECT_LE(poisson_tail(n, 2.0), 1e-12);
  EXPECT_GT(poisson_tail(n - 1, 2.0), 1e-12);
}

TEST(EnergyFamily, ComponentsMatchReference) {
  const Quaternion q(1.2, 0.7, 1.1, 0.4);
  const SpinorState v = energy_qvcs(q, Spin::plus, 0.8, 60).state;
  EXPECT_LT(std::abs(v.component(Spin::plus, 3) - oracle::kEnergyComp3Plus), 1e-15);
  EXPECT_LT(std::abs(v.component(Spin::minus, 3) - oracle::kEnergyComp3Minus), 1e-15);
}

TEST(EnergyFamily, EachLabelCarriesHalfTheNorm) {
  const Quaternion q(1.5, 2.0, 0.3, 1.0);
  for (Spin s : {Spin::plus, Spin::minus}) {
    const FamilyState f = energy_qvcs(q, s, 0.5, 80);
    EXPECT_NEAR(f.state.norm2(), 0.5, 1e-14);
    EXPECT_LE(f.tail, 1e-12);
  }
}

TEST(EnergyFamily, TailErrorSuggestsTruncation) {
  const Quaternion q(3.0, 0.0, 0.0, 0.0);
  try {
    energy_qvcs(q, Spin::plus, 1.0, 10);
    FAIL() << "expected TailError";
  } catch (const TailError& e) {
    EXPECT_GT(e.tail(), 1e-12);
    EXPECT_EQ(e.suggested_n_max(), suggest_n_max(9.0));
    EXPECT_NO_THROW(energy_qvcs(q, Spin::plus, 1.0, e.suggested_n_max()));
  }
}

TEST(CanonicalFamily, EqualsEnergyFamilyAtUnitOmega) {
  const Quaternion q(0.9, 1.0, 2.0, 3.0);
  const SpinorState a = canonical_qvcs(q, Spin::minus, 40).state;
  const SpinorState b = energy_qvcs(q, Spin::minus, 1.0, 40).state;
  EXPECT_LT((a.coeffs() - b.coeffs()).norm(), 1e-15);
}

TEST(VcsDiagonal, NormalizationSumsToOne) {
  double sum = 0.0;
  for (Spin s : {Spin::plus, Spin::minus}) {
    sum += vcs_diagonal(cplx(0.3, 1.0), cplx(-0.8, 0.2), s, 0.9, 1.1, 60).state.norm2();
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_NEAR(vcs_normalization(1.0, 0.0, 1.0, 1.0), std::exp(1.0) + 1.0, 1e-15);
}

TEST(QFamily, NormalizationSumsToOne) {
  const QuaternionQ q(1.2, 0.9, 0.7, 2.1);
  const double plus = q_qvcs(q, Spin::plus, 0.94, 1.06, 60).state.norm2();
  const double minus = q_qvcs(q, Spin::minus, 0.94, 1.06, 60).state.norm2();
  EXPECT_NEAR(plus, oracle::kQFamilyNorm2, 1e-14);
  EXPECT_NEAR(plus + minus, 1.0, 1e-12);
}

TEST(QFamily, ReducesToDiagonalFamily) {
  const QuaternionQ q(1.1, 0.6, 0.0, 1.3);
  for (Spin s : {Spin::plus, Spin::minus}) {
    const SpinorState a = q_qvcs(q, s, 0.8, 1.2, 60).state;
    const SpinorState b =
        vcs_diagonal(std::polar(1.1, 0.6), std::polar(1.1, -0.6), s, 0.8, 1.2, 60).state;
    EXPECT_LT((a.coeffs() - b.coeffs()).norm(), 1e-12);
  }
}

TEST(Displacement, MatchesReferenceExponential) {
  const Quaternion q(1.2, 0.7, 1.1, 0.4);
  const DisplacementResult d = displacement_qvcs(q, Spin::plus, 0.8, 40);
  EXPECT_LT(std::abs(d.state.component(Spin::plus, 2) - oracle::kDisplacementComp2), 1e-12);
  EXPECT_LT(std::abs(d.state.component(Spin::minus, 2) - oracle::kDisplacementComp2Minus), 1e-12);
  EXPECT_LT(d.norm_drift, 1e-10);
}

TEST(Displacement, EqualsSeriesForm) {
  for (double w : {0.5, 1.0, 2.0}) {
    const Quaternion q(1.4, 2.5, 0.4, 5.5);
    for (Spin s : {Spin::plus, Spin::minus}) {
      const SpinorState a = displacement_qvcs(q, s, w, 60).state;
      const SpinorState b = energy_qvcs(q, s, w, 60).state;
      EXPECT_LT((a.coeffs() - b.coeffs()).norm(), 1e-9);
    }
  }
}

TEST(Displacement, GeneratorIsAntiHermitian) {
  const FockOperator g = displacement_generator(Quaternion(1.0, 0.5, 0.5, 0.5), 1.3, 10);
  EXPECT_LT(max_abs(g.matrix() + g.matrix().adjoint()), 1e-15);
}

TEST(LinearCombination, UnitCoefficientsRequired) {
  const Quaternion q(0.5, 0.2, 0.2, 0.2);
  const SpinorState p = energy_qvcs(q, Spin::plus, 1.0, 30).state;
  const SpinorState m = energy_qvcs(q, Spin::minus, 1.0, 30).state;
  const SpinorState c = linear_combination(cplx(1.0), cplx(0.0), p, m);
  EXPECT_LT((c.coeffs() - p.coeffs()).norm(), 1e-15);
  EXPECT_NEAR(linear_combination(cplx(0.6), cplx(0.0, 0.8), p, m).norm2(), 0.5, 1e-12);
  EXPECT_THROW(linear_combination(cplx(1.0), cplx(1.0), p, m), ValidationError);
}

TEST(Evolution, PhasesAreUnitaryAndComposable) {
  const Quaternion q(1.0, 0.8, 1.0, 0.2);
  const SpinorState v = energy_qvcs(q, Spin::plus, 1.0, 40).state;
  const WeakCouplingModel model(0.94, 1.06, -1.0);
  const EnergyTable table = EnergyTable::weak_coupling(model, 40);
  const SpinorState a = evolve(evolve(v, 0.3, table), 1.1, table);
  const SpinorState b = evolve(v, 1.4, table);
  EXPECT_LT((a.coeffs() - b.coeffs()).norm(), 1e-13);
  EXPECT_NEAR(b.norm2(), v.norm2(), 1e-15);
  const SpinorState c = evolution_operator(1.1, table) * evolve(v, 0.3, table);
  EXPECT_LT((c.coeffs() - b.coeffs()).norm(), 1e-12);
}

TEST(Evolution, TableCoverage) {
  const EnergyTable z = EnergyTable::zeeman(ModelParams{}, 3);
  EXPECT_DOUBLE_EQ(z.energy(Spin::plus, 2), 2.5);
  EXPECT_THROW(z.energy(Spin::plus, 4), IndexError);
  EXPECT_THROW(evolve(SpinorState::zero(5), 1.0, z), IndexError);
  EXPECT_THROW(EnergyTable({1.0}, {}), ShapeError);
}
