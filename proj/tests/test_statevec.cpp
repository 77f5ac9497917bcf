#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "qtcert/gates.hpp"
#include "qtcert/statevec.hpp"

using namespace qtcert;

namespace {

CMatrix<double> random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Eigen::Index d = Eigen::Index{1} << n;
  CMatrix<double> a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
  }
  CMatrix<double> rho = a * a.adjoint();
  return rho / rho.trace();
}

PureState random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector<double> v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {g(rng), g(rng)};
  return PureState(v).normalized();
}

}  // namespace

TEST(PureState, DefaultIsEmptyRegister) {
  PureState s;
  EXPECT_EQ(s.num_qubits(), 0);
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(PureState, RejectsNonPowerOfTwoLength) {
  EXPECT_THROW(PureState(CVector<double>::Ones(3)), DimensionError);
}

TEST(PureState, CapacityLimit) {
  EXPECT_THROW(PureState::zeros(kMaxQubits + 1), CapacityError);
  EXPECT_THROW(PureState(CVector<double>::Ones(8), 2), CapacityError);
}

TEST(PureState, BasisLabelUsesQubitZeroAsMostSignificantBit) {
  const PureState s = PureState::basis(3, 0b100);
  EXPECT_EQ(s[4], Complex<double>(1.0));
  const PureState x0 = apply_unitary(PureState::zeros(3), pauli_x(), {0});
  EXPECT_EQ(x0[4], Complex<double>(1.0));
}

TEST(PureState, NormalizeZeroThrows) {
  EXPECT_THROW(PureState(CVector<double>::Zero(2)).normalized(), StateError);
}

TEST(DensityOperator, ConstructionChecks) {
  CMatrix<double> m = CMatrix<double>::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(DensityOperator{m}, StateError);  // not Hermitian
  EXPECT_THROW(DensityOperator{CMatrix<double>::Identity(2, 2)}, StateError);  // trace 2
  EXPECT_THROW(DensityOperator{CMatrix<double>::Identity(3, 3) / 3.0}, DimensionError);
  CMatrix<double> neg = CMatrix<double>::Zero(2, 2);
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  EXPECT_NO_THROW(DensityOperator{neg});
  EXPECT_THROW(DensityOperator::validated(neg), StateError);
}

TEST(DensityOperator, SubNormalizedAllowed) {
  const DensityOperator rho(CMatrix<double>::Identity(2, 2) / 8.0);
  EXPECT_DOUBLE_EQ(rho.trace(), 0.25);
  EXPECT_NEAR(rho.normalized().trace(), 1.0, 1e-15);
}

TEST(Tensor, MatchesKroneckerOrder) {
  std::mt19937_64 rng(1);
  const PureState a = random_state(1, rng);
  const PureState b = random_state(2, rng);
  const PureState ab = tensor(a, b);
  const oracle::Vec ref = oracle::kron(a.amplitudes(), b.amplitudes());
  EXPECT_LT((ab.amplitudes() - ref).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(tensor(PureState::zeros(20), PureState::zeros(5)), CapacityError);
}

TEST(ApplyUnitary, MatchesEmbeddedOperatorOnAnyTargets) {
  std::mt19937_64 rng(2);
  const PureState psi = random_state(4, rng);
  const DensityOperator rho(random_density(4, rng));
  // cnot with control 3, target 1 against the oracle's full-register operator.
  const oracle::Mat full = oracle::cnot(4, 3, 1);
  const PureState out = apply_unitary(psi, cnot(), {3, 1});
  EXPECT_LT((out.amplitudes() - full * psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-14);
  const DensityOperator rout = apply_unitary(rho, cnot(), {3, 1});
  EXPECT_LT((rout.matrix() - full * rho.matrix() * full.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ApplyUnitary, RejectsBadTargets) {
  const PureState psi = PureState::zeros(2);
  EXPECT_THROW(apply_unitary(psi, cnot(), {0, 0}), DimensionError);
  EXPECT_THROW(apply_unitary(psi, cnot(), {0, 2}), DimensionError);
  EXPECT_THROW(apply_unitary(psi, hadamard(), {0, 1}), DimensionError);
}

TEST(PartialTrace, MatchesOracleForEverySubset) {
  std::mt19937_64 rng(3);
  const int n = 4;
  const DensityOperator rho(random_density(n, rng));
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> discard;
    std::vector<int> kept;
    for (int q = 0; q < n; ++q) ((mask >> q) & 1 ? discard : kept).push_back(q);
    if (kept.empty()) continue;
    const DensityOperator red = partial_trace(rho, std::span<const int>(discard));
    EXPECT_LT((red.matrix() - oracle::keep(rho.matrix(), n, kept)).cwiseAbs().maxCoeff(), 1e-14) << mask;
  }
}

TEST(PartialTrace, PureOverloadAgreesWithDensity) {
  std::mt19937_64 rng(4);
  const PureState psi = random_state(3, rng);
  const std::vector<int> discard{1};
  EXPECT_LT((partial_trace(psi, discard).matrix() - partial_trace(to_density(psi), discard).matrix())
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
}

TEST(Expectation, RealForHermitianAndMatchesOverlap) {
  std::mt19937_64 rng(5);
  const PureState psi = random_state(2, rng);
  const PureState phi = random_state(2, rng);
  const double expected = std::norm(psi.amplitudes().dot(phi.amplitudes()));
  EXPECT_NEAR(expectation(to_density(phi), psi), expected, 1e-15);
  EXPECT_THROW(expectation(to_density(phi), PureState::zeros(3)), DimensionError);
}

TEST(ProjectOut, CarriesProbabilityAsNorm) {
  // (|00> + |11>)/sqrt2, project qubit 0 onto 1: remaining |1> with norm^2 1/2.
  CVector<double> v = CVector<double>::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  const PureState bell(v);
  const PureState rest = project_out(bell, 0, 1);
  EXPECT_EQ(rest.num_qubits(), 1);
  EXPECT_NEAR(rest.norm_squared(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(rest[1]), std::sqrt(0.5), 1e-15);
  const DensityOperator rrest = project_out(to_density(bell), 0, 1);
  EXPECT_NEAR(rrest.trace(), 0.5, 1e-15);
}

TEST(InsertZero, PlacesFreshQubitAtPosition) {
  std::mt19937_64 rng(6);
  const DensityOperator rho(random_density(2, rng));
  for (int pos = 0; pos <= 2; ++pos) {
    const DensityOperator out = insert_zero(rho, pos);
    EXPECT_EQ(out.num_qubits(), 3);
    std::vector<int> kept;
    for (int q = 0; q < 3; ++q) {
      if (q != pos) kept.push_back(q);
    }
    EXPECT_LT((oracle::keep(out.matrix(), 3, kept) - rho.matrix()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(oracle::keep(out.matrix(), 3, {pos})(0, 0).real(), rho.trace(), 1e-15);
  }
}

TEST(Float, TemplatesInstantiate) {
  const BasicPureState<float> s = BasicPureState<float>::zeros(2);
  const auto out = apply_unitary(s, hadamard<float>(), {1});
  EXPECT_NEAR(out.norm_squared(), 1.0f, 1e-6f);
}
