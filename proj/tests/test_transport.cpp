#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "gm/errors.hpp"
#include "gm/transport.hpp"

namespace gm {
namespace {

TEST(Ipr, KnownDistributions) {
  EXPECT_DOUBLE_EQ(ipr({1.0, 0.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(ipr(std::vector<double>(8, 0.125)), 8.0);
  try {
    ipr({0.5, 0.4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidDistribution);
  }
}

TEST(StageDistances, ScfContinuesCycle) {
  const auto d = transport_stage_distances(TransportTopology::kScf, 8, 11);
  const std::vector<std::size_t> expect{4, 2, 1, 4, 1, 2, 1, 4, 1, 2, 1};
  EXPECT_EQ(d, expect);
}

// A 50:50 splitter sweep is a Walsh-Hadamard factor per distance: the photon
// spreads over 2^k modes after k distinct distances and refocuses when a
// distance repeats.
TEST(Transport, ScfDiffusesThenRefocuses) {
  TransportConfig cfg;
  const TransportRecord r = run_transport(cfg);
  const std::vector<double> expect{2, 4, 8, 4, 2, 1, 2};
  ASSERT_EQ(r.ipr_per_stage.size(), expect.size());
  for (std::size_t s = 0; s < expect.size(); ++s) EXPECT_NEAR(r.ipr_per_stage[s], expect[s], 1e-9) << s;
}

TEST(Transport, ClementsLightCone) {
  TransportConfig cfg;
  cfg.topology = TransportTopology::kClements;
  cfg.n_modes = 16;
  cfg.stages = 10;
  const TransportRecord r = run_transport(cfg);
  for (std::size_t s = 0; s < cfg.stages; ++s) {
    for (std::size_t m = 0; m < cfg.n_modes; ++m) {
      const auto dist = static_cast<std::size_t>(std::abs(static_cast<long>(m) - static_cast<long>(cfg.n_modes / 2)));
      if (dist > s + 1) EXPECT_LT(r.single_photon_heatmap[s][m], 1e-12) << s << "," << m;
    }
  }
}

TEST(Transport, HongOuMandelAtFirstSplitter) {
  TransportConfig cfg;
  cfg.topology = TransportTopology::kClements;
  cfg.n_modes = 4;
  cfg.stages = 1;
  cfg.input = {1, 1, 0, 0};
  const TransportRecord r = run_transport(cfg);
  EXPECT_NEAR(r.bunching_per_stage[0], 1.0, 1e-12);
  EXPECT_NEAR(r.coincidence_heatmap[0][0], 0.5, 1e-12);
  EXPECT_NEAR(r.coincidence_heatmap[0][1], 0.5, 1e-12);
}

TEST(Transport, TwoPhotonMarginalsNormalized) {
  TransportConfig cfg;
  cfg.n_modes = 16;
  cfg.stages = 12;
  cfg.input.assign(16, 0);
  cfg.input[3] = 1;
  cfg.input[11] = 1;
  cfg.noise = {NoiseKind::kUncorrelated, 0.02, 0.0, 5};
  cfg.n_circuits = 4;
  const TransportRecord r = run_transport(cfg);
  for (const auto& row : r.single_photon_heatmap) {
    double sum = 0.0;
    for (double p : row) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Transport, NoiseAveragingIsDeterministic) {
  TransportConfig cfg;
  cfg.noise = {NoiseKind::kCorrelated, 0.02, 0.0, 13};
  cfg.n_circuits = 10;
  const TransportRecord a = run_transport(cfg);
  const TransportRecord b = run_transport(cfg);
  EXPECT_EQ(a.single_photon_heatmap, b.single_photon_heatmap);
  EXPECT_LT(a.ipr_per_stage[5], 1.5);
}

TEST(Transport, InputValidation) {
  TransportConfig cfg;
  cfg.input = {1, 1, 1, 0, 0, 0, 0, 0};
  try {
    run_transport(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSizeLimit);
  }
  cfg.input = {1, 0};
  EXPECT_THROW(run_transport(cfg), Error);
  cfg.input.clear();
  cfg.n_modes = 6;
  EXPECT_THROW(run_transport(cfg), Error);
}

}  // namespace
}  // namespace gm
