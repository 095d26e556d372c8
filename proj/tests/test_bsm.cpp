#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "gm/bsm.hpp"
#include "gm/errors.hpp"
#include "gm/fock.hpp"
#include "gm/mesh.hpp"
#include "bsm_oracle.hpp"

namespace gm {
namespace {

using testing::oracle;
using testing::oracle_unitary;
using testing::OracleStats;

TEST(BsmOracle, FourSplitterReachesThreeQuarters) {
  const OracleStats s = oracle(oracle_unitary(), true, 0.9);
  EXPECT_NEAR(s.total, 1.0, 1e-12);
  EXPECT_NEAR(s.success, 0.75, 1e-12);
  for (double p : s.posteriors) {
    EXPECT_TRUE(std::abs(p - 1.0) < 1e-9 || std::abs(p - 0.5) < 1e-9) << p;
  }
}

TEST(BsmOracle, PlainSplitterReachesHalf) {
  const OracleStats s = oracle(oracle_unitary(), false, 0.9);
  EXPECT_NEAR(s.success, 0.5, 1e-12);
}

TEST(BsmCircuit, MeshMatchesOracleSuccess) {
  for (std::size_t depth = 3; depth <= 7; ++depth) {
    const BsmCircuit c = build_bsm_circuit(depth);
    EXPECT_EQ(c.program.layers.size(), depth);
    const DecodeResult d = bayesian_decode(detection_distributions(c, mesh_to_unitary(c.program)), 0.9);
    EXPECT_NEAR(d.success_rate, 0.75, 1e-9) << depth;
    EXPECT_NEAR(d.error_given_heralded, 0.0, 1e-9) << depth;
  }
}

TEST(BsmCircuit, OracleUnitaryThroughLibraryDecoder) {
  const BsmCircuit c = build_bsm_circuit(3);
  const DecodeResult d = bayesian_decode(detection_distributions(c, oracle_unitary()), 0.9);
  EXPECT_NEAR(d.success_rate, 0.75, 1e-12);
}

TEST(BsmCircuit, StandardMeasurementIsHalf) {
  const BsmCircuit c = build_standard_bsm_circuit();
  EXPECT_TRUE(c.ancilla_modes.empty());
  const DecodeResult d = bayesian_decode(detection_distributions(c, mesh_to_unitary(c.program)), 0.9);
  EXPECT_NEAR(d.success_rate, 0.5, 1e-9);
  EXPECT_NEAR(d.error_given_heralded, 0.0, 1e-9);
}

TEST(BsmCircuit, PosteriorClassesAreOneOrHalf) {
  const BsmCircuit c = build_bsm_circuit(3);
  const BellDistributions dists = detection_distributions(c, mesh_to_unitary(c.program));
  const DecodeResult d = bayesian_decode(dists, 0.9);
  for (std::size_t s = 0; s < d.posterior.size(); ++s) {
    double evidence = 0.0;
    for (const auto& dist : dists) evidence += dist.probability[s];
    if (evidence < 1e-14) continue;
    double best = 0.0, sum = 0.0;
    for (double p : d.posterior[s]) {
      best = std::max(best, p);
      sum += p;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_TRUE(std::abs(best - 1.0) < 1e-9 || std::abs(best - 0.5) < 1e-9) << best;
  }
}

TEST(BsmCircuit, DistributionsAreNormalized) {
  const BsmCircuit c = build_bsm_circuit(3);
  const ComplexMatrix u = mesh_to_unitary(c.program);
  for (BellState b : kBellStates) {
    const PatternDistribution d = detection_distribution(c, b, u);
    double sum = 0.0;
    for (double p : d.probability) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-12) << to_string(b);
  }
}

TEST(BsmCircuit, IdentityCircuitDecodesNothing) {
  const BsmCircuit c = build_bsm_circuit(3);
  const DecodeResult d = bayesian_decode(detection_distributions(c, ComplexMatrix::Identity(8, 8)), 0.9);
  // Bar state everywhere reveals which-rail information only: Psi and Phi are
  // separated but the relative sign is not.
  EXPECT_NEAR(d.success_rate, 0.0, 1e-12);
  EXPECT_TRUE(std::isnan(d.error_given_heralded));
}

TEST(BsmDecode, IdealThresholdPlateau) {
  const BsmCircuit c = build_bsm_circuit(3);
  const auto sweep = threshold_sweep(c, mesh_to_unitary(c.program), {0.26, 0.51, 0.75, 0.9, 1.0});
  EXPECT_NEAR(sweep[0].first, 1.0, 1e-9);
  EXPECT_NEAR(sweep[0].second, 0.125, 1e-9);
  for (std::size_t k = 1; k < sweep.size(); ++k) {
    EXPECT_NEAR(sweep[k].first, 0.75, 1e-9);
    EXPECT_NEAR(sweep[k].second, 0.0, 1e-9);
  }
}

TEST(BsmDecode, SuccessFallsWithThresholdUnderNoise) {
  BsmBenchmarkConfig cfg;
  cfg.sigma = 0.1;
  cfg.n_samples = 1;
  cfg.seed = 3;
  const BsmCircuit c = build_bsm_circuit(3);
  const ComplexMatrix u = apply_noise(c.program, {NoiseKind::kCorrelated, 0.1, 0.0, 3});
  const auto sweep = threshold_sweep(c, u, {0.3, 0.5, 0.7, 0.9, 0.99});
  for (std::size_t k = 1; k < sweep.size(); ++k) EXPECT_LE(sweep[k].first, sweep[k - 1].first + 1e-15);
}

TEST(BsmDecode, RejectsBadThreshold) {
  const BsmCircuit c = build_bsm_circuit(3);
  const BellDistributions d = detection_distributions(c, mesh_to_unitary(c.program));
  EXPECT_THROW(bayesian_decode(d, 0.25), Error);
  EXPECT_THROW(bayesian_decode(d, 1.01), Error);
}

TEST(BsmDecode, RejectsEmptyDistributions) {
  const BsmCircuit c = build_bsm_circuit(3);
  BellDistributions d = detection_distributions(c, mesh_to_unitary(c.program));
  for (auto& dist : d) std::fill(dist.probability.begin(), dist.probability.end(), 0.0);
  try {
    bayesian_decode(d, 0.9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateInput);
  }
}

TEST(BsmCircuit, DepthOutOfRange) {
  EXPECT_THROW(build_bsm_circuit(2), Error);
  EXPECT_THROW(build_bsm_circuit(8), Error);
}

TEST(BsmBenchmark, ZeroNoiseSamplesAreIdentical) {
  for (BsmArchitecture a : {BsmArchitecture::kGreenMachine, BsmArchitecture::kClements}) {
    BsmBenchmarkConfig cfg;
    cfg.architecture = a;
    cfg.n_samples = 5;
    const BsmResult r = benchmark(cfg);
    ASSERT_EQ(r.samples.size(), 5u);
    for (const BsmSample& s : r.samples) {
      EXPECT_NEAR(s.success, 0.75, 1e-9) << to_string(a);
      EXPECT_EQ(s.success, r.samples[0].success);
    }
  }
}

TEST(BsmBenchmark, ReproducibleForSeed) {
  BsmBenchmarkConfig cfg;
  cfg.sigma = 0.05;
  cfg.n_samples = 8;
  cfg.seed = 11;
  const BsmResult a = benchmark(cfg);
  const BsmResult b = benchmark(cfg);
  for (std::size_t k = 0; k < a.samples.size(); ++k) EXPECT_EQ(a.samples[k].success, b.samples[k].success);
  EXPECT_LT(a.success_rate, 0.75);
}

TEST(BsmBenchmark, ClementsProgramRealizesIdealTransform) {
  const MeshProgram m = clements_bsm_program();
  const ComplexMatrix target = mesh_to_unitary(build_bsm_circuit(3).program);
  EXPECT_LT(distance_up_to_global_phase(mesh_to_unitary(m), target), 1e-9);
}

TEST(LossThreshold, PercolationAnchor) {
  EXPECT_NEAR(loss_threshold(kPercolationThreshold), 0.98186, 1e-4);
  EXPECT_NEAR(0.75 * std::pow(loss_threshold(0.7), 6), 0.7, 1e-12);
  try {
    loss_threshold(0.8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInfeasible);
  }
}

}  // namespace
}  // namespace gm
