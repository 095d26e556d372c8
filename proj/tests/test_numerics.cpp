#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gm/errors.hpp"
#include "gm/numerics.hpp"

namespace gm {
namespace {

TEST(Haar, SingleModeIsAPhase) {
  const ComplexMatrix u = haar_random_unitary(1, 11);
  ASSERT_EQ(u.rows(), 1);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-14);
}

TEST(Haar, ZeroDimensionRejected) {
  try {
    haar_random_unitary(0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidDimension);
  }
}

TEST(Haar, Unitary) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix u = haar_random_unitary(2, seed);
    EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(2, 2)).norm(), 1e-12);
    EXPECT_TRUE(is_unitary(haar_random_unitary(8, seed), 1e-10));
  }
}

// E|U_ij|^2 = 1/n under the Haar measure; Var|U_ij|^2 = (n-1)/(n^2 (n+1)).
TEST(Haar, SecondMomentMatchesHaar) {
  for (std::size_t n : {4u, 8u}) {
    Rng rng(1234 + n);
    const int samples = 10000;
    double sum = 0.0;
    double sum_corner = 0.0;
    for (int s = 0; s < samples; ++s) {
      const ComplexMatrix u = haar_random_unitary(n, rng);
      sum += std::norm(u(0, 0));
      sum_corner += std::norm(u(static_cast<Eigen::Index>(n - 1), 1));
    }
    const double nd = static_cast<double>(n);
    const double se = std::sqrt((nd - 1.0) / (nd * nd * (nd + 1.0)) / samples);
    EXPECT_NEAR(sum / samples, 1.0 / nd, 3.0 * se);
    EXPECT_NEAR(sum_corner / samples, 1.0 / nd, 0.05 / nd);
  }
}

TEST(IsUnitary, Cases) {
  EXPECT_TRUE(is_unitary(ComplexMatrix::Identity(4, 4), 1e-12));
  ComplexMatrix d = ComplexMatrix::Identity(2, 2);
  d(1, 1) = 0.5;
  EXPECT_FALSE(is_unitary(d, 1e-12));
  EXPECT_THROW(is_unitary(ComplexMatrix::Zero(2, 3), 1e-12), Error);
}

TEST(StateInfidelity, IdenticalAndGlobalPhase) {
  Rng rng(5);
  const ComplexMatrix u = haar_random_unitary(5, rng);
  const StateVector psi = random_state(5, rng);
  EXPECT_NEAR(state_infidelity(u, u, psi), 0.0, 1e-12);
  const ComplexMatrix id = ComplexMatrix::Identity(5, 5);
  EXPECT_NEAR(state_infidelity(id, std::polar(1.0, 0.9) * id, psi), 0.0, 1e-12);
}

TEST(StateInfidelity, SwapOnBasisStateIsOne) {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_NEAR(state_infidelity(ComplexMatrix::Identity(2, 2), x, StateVector::basis(2, 0)), 1.0, 1e-15);
}

TEST(StateInfidelity, BoundedForRandomTriples) {
  Rng rng(77);
  for (int t = 0; t < 1000; ++t) {
    const ComplexMatrix a = haar_random_unitary(3, rng);
    const ComplexMatrix b = haar_random_unitary(3, rng);
    const double f = state_infidelity(a, b, random_state(3, rng));
    EXPECT_GE(f, -1e-10);
    EXPECT_LE(f, 1.0 + 1e-10);
  }
}

TEST(StateInfidelity, DimensionMismatch) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(state_infidelity(id, ComplexMatrix::Identity(3, 3), StateVector::basis(2, 0)), Error);
  EXPECT_THROW(state_infidelity(id, id, StateVector::basis(3, 0)), Error);
}

TEST(StateVector, RejectsUnnormalized) {
  ComplexVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector{v}, Error);
  EXPECT_NEAR(StateVector::normalized(v).amplitudes().norm(), 1.0, 1e-15);
}

TEST(MatrixError, Values) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(matrix_error(id, id), 0.0);
  // (1/8) * ||2 I||^2 = 8/8
  EXPECT_NEAR(matrix_error(id, -id), 1.0, 1e-15);
  EXPECT_THROW(matrix_error(id, ComplexMatrix::Identity(3, 3)), Error);
}

TEST(GlobalPhaseDistance, Cases) {
  const ComplexMatrix u = haar_random_unitary(4, 9);
  EXPECT_NEAR(distance_up_to_global_phase(std::polar(1.0, 0.7) * u, u), 0.0, 1e-12);
  EXPECT_NEAR(distance_up_to_global_phase(u, u), 0.0, 1e-12);
  // min_g ||I - e^{ig} diag(1,-1)||^2 = |1 - e^{ig}|^2 + |1 + e^{ig}|^2 = 4 for every g.
  ComplexMatrix z = ComplexMatrix::Identity(2, 2);
  z(1, 1) = -1.0;
  EXPECT_NEAR(distance_up_to_global_phase(ComplexMatrix::Identity(2, 2), z), 2.0, 1e-12);
  EXPECT_THROW(distance_up_to_global_phase(z, u), Error);
}

TEST(GlobalPhaseDistance, MatrixErrorIsPhaseSensitive) {
  const ComplexMatrix u = haar_random_unitary(3, 4);
  const ComplexMatrix v = std::polar(1.0, 0.3) * u;
  EXPECT_GT(matrix_error(u, v), 1e-3);
  EXPECT_NEAR(distance_up_to_global_phase(u, v), 0.0, 1e-12);
}

TEST(Dft, IsUnitary) { EXPECT_TRUE(is_unitary(dft_matrix(8), 1e-12)); }

}  // namespace
}  // namespace gm
