#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "gm/errors.hpp"
#include "gm/mzi.hpp"
#include "gm/random.hpp"

namespace gm {
namespace {

constexpr double kPi = std::numbers::pi;

// Pauli exponentials written out from cos/sin rather than through the
// library's helper, so the oracle is independent of the implementation.
Eigen::Matrix2cd pauli_exp(double a, char axis) {
  Eigen::Matrix2cd p;
  if (axis == 'x') {
    p << 0, 1, 1, 0;
  } else {
    p << 1, 0, 0, -1;
  }
  return std::cos(a) * Eigen::Matrix2cd::Identity() - kI * std::sin(a) * p;
}

double ratio_magnitude(const Eigen::Matrix2cd& t) {
  return std::abs(t(0, 1)) == 0.0 ? std::numeric_limits<double>::infinity()
                                  : std::abs(t(0, 0)) / std::abs(t(0, 1));
}

TEST(IdealTransfer, CrossBarBalanced) {
  const Eigen::Matrix2cd cross = ideal_transfer(0.0, 0.0);
  EXPECT_NEAR(std::abs(cross(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(cross(0, 1) - kI), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(cross(1, 0) - kI), 0.0, 1e-15);

  const Eigen::Matrix2cd bar = ideal_transfer(kPi, 0.0);
  EXPECT_NEAR(std::abs(bar(0, 0) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(bar(1, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(bar(0, 1)), 0.0, 1e-15);

  const Eigen::Matrix2cd half = ideal_transfer(kPi / 2, 0.0);
  EXPECT_NEAR(std::norm(half(0, 0)), 0.5, 1e-15);
  EXPECT_NEAR(std::norm(half(0, 1)), 0.5, 1e-15);
}

TEST(IdealTransfer, BarWithPiPhaseIsIdentity) {
  EXPECT_LT((ideal_transfer(kPi, kPi) - Eigen::Matrix2cd::Identity()).norm(), 1e-15);
}

TEST(NoisyTransfer, ReducesToIdealAndStaysUnitary) {
  Rng rng(3);
  for (int t = 0; t < 10000; ++t) {
    MZIParams p;
    p.theta = 2 * kPi * uniform01(rng);
    p.phi = 2 * kPi * uniform01(rng);
    p.alpha = 0.3 * standard_normal(rng);
    p.beta = 0.3 * standard_normal(rng);
    const Eigen::Matrix2cd u = noisy_transfer(p);
    ASSERT_LT((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm(), 1e-12);
    p.alpha = p.beta = 0.0;
    ASSERT_LT((noisy_transfer(p) - ideal_transfer(p.theta, p.phi)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(NoisyTransfer, MatchesPauliProduct) {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const MZIParams p{2 * kPi * uniform01(rng), 2 * kPi * uniform01(rng), 0.2 * standard_normal(rng),
                      0.2 * standard_normal(rng)};
    Eigen::Matrix2cd phase = Eigen::Matrix2cd::Identity();
    phase(0, 0) = std::polar(1.0, p.phi);
    const Eigen::Matrix2cd oracle = -std::polar(1.0, p.theta / 2) * pauli_exp(p.beta + kPi / 4, 'x') *
                                    pauli_exp(p.theta / 2, 'z') * pauli_exp(p.alpha + kPi / 4, 'x') *
                                    phase;
    EXPECT_LT((noisy_transfer(p) - oracle).norm(), 1e-13);
  }
}

// At theta = 0 the two splitter rotations merge into one of angle
// pi/2 + alpha + beta, so the residual bar amplitude is |sin(alpha + beta)|.
TEST(NoisyTransfer, ImperfectCross) {
  const Eigen::Matrix2cd u = noisy_transfer({0.0, 0.0, 0.1, 0.1});
  EXPECT_LT((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm(), 1e-12);
  EXPECT_NEAR(std::abs(u(0, 0)), std::sin(0.2), 1e-14);
  EXPECT_NEAR(std::abs(noisy_transfer({0.0, 0.0, 0.1, -0.1})(0, 0)), 0.0, 1e-14);
}

TEST(LossyTransfer, Factorization) {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    MZIParams p{2 * kPi * uniform01(rng), 2 * kPi * uniform01(rng), 0.1 * standard_normal(rng),
                0.1 * standard_normal(rng), 1.0, 1.0};
    EXPECT_LT((lossy_transfer(p) - noisy_transfer(p)).norm(), 1e-14);
    p.gamma1 = p.gamma2 = 0.7;
    EXPECT_LT((lossy_transfer(p) - 0.7 * noisy_transfer(p)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(LossyTransfer, SingularValuesAtMostOne) {
  Rng rng(9);
  for (int t = 0; t < 10000; ++t) {
    MZIParams p{2 * kPi * uniform01(rng), 2 * kPi * uniform01(rng), 0.2 * standard_normal(rng),
                0.2 * standard_normal(rng), uniform01(rng), uniform01(rng)};
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(lossy_transfer(p));
    ASSERT_LE(svd.singularValues()(0), 1.0 + 1e-12);
  }
}

TEST(LossyTransfer, MinimumRatioFromSweep) {
  MZIParams p{0.0, 0.0, 0.0, 0.0, 0.5, 0.9};
  double lo = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 10000; ++k) {
    p.theta = kPi * k / 10000.0;
    lo = std::min(lo, ratio_magnitude(lossy_transfer(p)));
  }
  EXPECT_NEAR(lo, 0.4 / 1.4, 1e-9);
  p.theta = 0.0;
  EXPECT_NEAR(ratio_magnitude(lossy_transfer(p)), 0.4 / 1.4, 1e-12);
}

TEST(SplittingBounds, Limits) {
  SplittingBounds b = splitting_bounds({0, 0, 0, 0, 0.8, 0.8});
  EXPECT_NEAR(b.lower, 0.0, 1e-15);
  EXPECT_TRUE(std::isinf(b.upper));

  b = splitting_bounds({0, 0, 0, 0, 0.5, 0.9});
  EXPECT_NEAR(b.lower, 0.4 / 1.4, 1e-12);
  EXPECT_NEAR(b.upper, 1.4 / 0.4, 1e-12);

  b = splitting_bounds({0, 0, 0.15, 0.0, 1.0, 1.0});
  EXPECT_NEAR(b.lower, std::tan(0.15), 1e-12);
  EXPECT_NEAR(b.upper, 1.0 / std::tan(0.15), 1e-12);
  EXPECT_NEAR(b.lower, 0.1511, 1e-4);
  EXPECT_NEAR(b.upper, 6.617, 1e-3);
}

TEST(SplittingBounds, LosslessFormUsesSumAndDifference) {
  const SplittingBounds b = splitting_bounds({0, 0, 0.07, -0.03, 1.0, 1.0});
  EXPECT_NEAR(b.lower, std::tan(0.04), 1e-12);
  EXPECT_NEAR(b.upper, 1.0 / std::tan(0.10), 1e-12);
}

TEST(SplittingBounds, DegenerateDevice) {
  try {
    splitting_bounds({0, 0, 0.1, 0.1, 0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateDevice);
  }
}

// Every ratio reached by a theta sweep must lie inside the bounds, and the
// sweep must come close to both ends.
TEST(SplittingBounds, ContainSweptRatios) {
  Rng rng(21);
  for (int t = 0; t < 1000; ++t) {
    MZIParams p{0.0, 2 * kPi * uniform01(rng), 0.2 * standard_normal(rng), 0.2 * standard_normal(rng),
                0.2 + 0.8 * uniform01(rng), 0.2 + 0.8 * uniform01(rng)};
    const SplittingBounds b = splitting_bounds(p);
    ASSERT_LE(b.lower, b.upper);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int k = 0; k <= 10000; ++k) {
      p.theta = kPi * k / 10000.0;
      const double r = ratio_magnitude(lossy_transfer(p));
      ASSERT_GE(r, b.lower * (1 - 1e-6) - 1e-12);
      if (std::isfinite(b.upper)) ASSERT_LE(r, b.upper * (1 + 1e-6));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    EXPECT_NEAR(lo, b.lower, 1e-6 * (1 + b.lower));
    if (std::isfinite(b.upper) && b.upper < 1e6) EXPECT_NEAR(hi, b.upper, 1e-6 * b.upper);
  }
}

}  // namespace
}  // namespace gm
