#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gm/fock.hpp"
#include "gm/mesh.hpp"
#include "gm/noise.hpp"

namespace gm {

inline constexpr double kPercolationThreshold = 0.672;
inline constexpr double kBoostedSuccess = 0.75;

enum class BellState { kPsiPlus = 0, kPsiMinus = 1, kPhiPlus = 2, kPhiMinus = 3 };

inline constexpr std::array<BellState, 4> kBellStates{BellState::kPsiPlus, BellState::kPsiMinus,
                                                      BellState::kPhiPlus, BellState::kPhiMinus};

std::string to_string(BellState b);

struct BsmCircuit {
  std::size_t n_modes = 8;
  // Logical |0> puts the photon in .first, |1> in .second.
  std::pair<std::size_t, std::size_t> qubit1_rails{0, 1};
  std::pair<std::size_t, std::size_t> qubit2_rails{4, 5};
  // One photon each; empty for the unboosted measurement.
  std::vector<std::size_t> ancilla_modes;
  MeshProgram program;
};

// Boosted measurement on the first `depth` stages of the 8-mode SCF mesh.
// Stage one (distance 4) interferes the matching rails of the two qubits;
// stages two and three turn each half {0,1,2,3}, {4,5,6,7} into a balanced
// four-splitter over one output of each qubit splitter and two ancillas.
// Couplings not needed for that, and every stage beyond three, are held in
// the bar state.
BsmCircuit build_bsm_circuit(std::size_t depth);

// Unboosted measurement: only the two distance-4 qubit splitters.
BsmCircuit build_standard_bsm_circuit();

// Fock-basis superposition fed into the circuit for a Bell input.
std::vector<std::pair<Complex, OccupationVector>> bell_input(const BsmCircuit& c, BellState b);

// Photon-number-resolved detection probabilities, indexed by the rank of the
// pattern in the (n_modes, photons) Fock basis.
struct PatternDistribution {
  std::shared_ptr<const FockBasis> basis;
  std::vector<double> probability;
};

PatternDistribution detection_distribution(const BsmCircuit& c, BellState b, const ComplexMatrix& u);

using BellDistributions = std::array<PatternDistribution, 4>;
BellDistributions detection_distributions(const BsmCircuit& c, const ComplexMatrix& u);

struct DecodeResult {
  double success_rate = 0.0;
  // NaN when nothing is heralded.
  double error_given_heralded = 0.0;
  // Per pattern: decoded Bell index, or -1 for discard.
  std::vector<int> decision;
  // Per pattern posteriors under uniform priors (all zero for impossible patterns).
  std::vector<std::array<double, 4>> posterior;
};

// Decode to the maximum-posterior Bell state when it reaches `threshold`,
// otherwise discard. Ties go to the lowest Bell index.
DecodeResult bayesian_decode(const BellDistributions& dists, double threshold);

enum class BsmArchitecture { kGreenMachine, kClements };

std::string to_string(BsmArchitecture a);
BsmArchitecture bsm_architecture_from_string(const std::string& name);

struct BsmSample {
  std::size_t sample = 0;
  double success = 0.0;
  double error = 0.0;
};

struct Quantiles {
  double min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0, mean = 0.0;
};

Quantiles summarize(const std::vector<double>& values);

struct BsmResult {
  double success_rate = 0.0;          // mean over samples
  double error_given_heralded = 0.0;  // mean over samples with a herald
  Quantiles success;
  Quantiles error;
  std::vector<BsmSample> samples;
};

struct BsmBenchmarkConfig {
  BsmArchitecture architecture = BsmArchitecture::kGreenMachine;
  std::size_t depth = 3;
  double sigma = 0.0;
  double threshold = 0.9;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

// Green Machine: the pruned SCF circuit under correlated noise. Clements: the
// same ideal 8-mode transform decomposed onto a Clements mesh, every MZI with
// its own errors.
BsmResult benchmark(const BsmBenchmarkConfig& cfg);

// Decoded success and error for each threshold on one realized circuit.
std::vector<std::pair<double, double>> threshold_sweep(const BsmCircuit& c, const ComplexMatrix& u,
                                                       const std::vector<double>& thresholds);

// Mesh realizing the ideal boosted transform on a Clements grid.
MeshProgram clements_bsm_program();

// Transmission per photon needed for P = 0.75 eta^6 to reach `target`.
double loss_threshold(double target);

}  // namespace gm
