#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gm/fock.hpp"
#include "gm/noise.hpp"

namespace gm {

enum class TransportTopology { kScf, kClements };

std::string to_string(TransportTopology t);
TransportTopology transport_topology_from_string(const std::string& name);

// Coupling distance of each stage. SCF continues the fully expressive order
// past n - 1 stages by repeating its cycle; Clements alternates even and odd
// nearest-neighbour layers.
std::vector<std::size_t> transport_stage_distances(TransportTopology t, std::size_t n, std::size_t stages);

struct TransportRecord {
  std::size_t stages = 0;
  std::size_t n_modes = 0;
  // Row s: state after stage s + 1. Single-photon rows hold the per-mode
  // probability of finding a photon (occupation / photon number).
  std::vector<std::vector<double>> single_photon_heatmap;
  // P(n_i = 2) per mode; zero for single-photon inputs.
  std::vector<std::vector<double>> coincidence_heatmap;
  std::vector<double> bunching_per_stage;
  std::vector<double> ipr_per_stage;
};

struct TransportConfig {
  TransportTopology topology = TransportTopology::kScf;
  std::size_t n_modes = 8;
  std::size_t stages = 7;
  OccupationVector input;  // empty: one photon in mode n / 2
  NoiseModel noise;
  std::size_t n_circuits = 1;
  std::size_t threads = 1;
};

// Every MZI at 50:50. Heatmaps are averaged over `n_circuits` noise draws.
TransportRecord run_transport(const TransportConfig& cfg);

// 1 / sum p_i^2. Throws kInvalidDistribution unless sum p_i = 1 within 1e-6.
double ipr(const std::vector<double>& probabilities);

}  // namespace gm
