#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gm/fock.hpp"
#include "gm/mesh.hpp"
#include "gm/numerics.hpp"

namespace gm {

enum class NoiseKind { kCorrelated, kUncorrelated, kHybrid };

std::string to_string(NoiseKind k);
NoiseKind noise_kind_from_string(const std::string& name);

struct NoiseModel {
  NoiseKind kind = NoiseKind::kCorrelated;
  double sigma = 0.0;
  // Per-application spread added on top of the shared pair (hybrid only).
  double sigma_jitter = 0.0;
  std::uint64_t seed = 0;
};

struct ErrorPair {
  double alpha = 0.0;
  double beta = 0.0;
};

// Splitter errors for `count` consecutive MZI applications of circuit instance
// `circuit`. Correlated: one shared pair. Uncorrelated: a fresh pair each.
// Hybrid: shared pair plus independent jitter.
std::vector<ErrorPair> draw_errors(const NoiseModel& model, std::uint64_t circuit, std::size_t count);

// Realized transfer matrix of `m` on noisy hardware, instance `circuit`.
ComplexMatrix apply_noise(const MeshProgram& m, const NoiseModel& model, std::uint64_t circuit = 0);

// Second-order estimate of the average infidelity, linear in photon number.
double predict_infidelity(NoiseKind kind, std::size_t n, double sigma, std::size_t n_photons = 1);

// Two-photon states are stored as symmetric n x n amplitude tensors C with
// sum |C_ab|^2 = 1, so that U acts as C -> U C U^T.
ComplexMatrix random_two_photon_state(std::size_t n, Rng& rng);
double two_photon_state_infidelity(const ComplexMatrix& u_ideal, const ComplexMatrix& u_actual,
                                   const ComplexMatrix& state);

struct ScalingConfig {
  std::size_t n = 16;
  std::vector<double> sigmas{0.01};
  std::vector<NoiseKind> kinds{NoiseKind::kCorrelated, NoiseKind::kUncorrelated};
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  // With 2, each row also carries Fock-input infidelities: one photon in mode
  // k and one photon in each of modes k and l, with k != l drawn per sample.
  std::size_t n_photons = 1;
  std::size_t threads = 1;
};

struct ScalingSample {
  std::size_t sample = 0;
  double sigma = 0.0;
  NoiseKind kind = NoiseKind::kCorrelated;
  double matrix_error = 0.0;
  double state_infidelity = 0.0;
  // Only filled when n_photons = 2.
  double fock1_infidelity = 0.0;
  double fock2_infidelity = 0.0;
  // Haar-random state of the symmetric two-photon space.
  double sym2_infidelity = 0.0;
};

// 1 - |<in| U_ideal^dagger U_actual |in>|^2 for a Fock input.
double fock_state_infidelity(const ComplexMatrix& u_ideal, const ComplexMatrix& u_actual,
                             const OccupationVector& input);

// Haar targets compiled onto a Clements mesh, one target per sample index and
// shared by every (sigma, kind) so the comparison is paired.
std::vector<ScalingSample> scaling_samples(const ScalingConfig& cfg);

double median(std::vector<double> values);
double quantile(std::vector<double> values, double q);

}  // namespace gm
