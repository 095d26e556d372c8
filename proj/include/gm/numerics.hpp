#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "gm/random.hpp"

namespace gm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Normalized single-photon state sum_i c_i a_i^dagger |0>.
class StateVector {
 public:
  // Throws kInvalidInput unless sum |c_i|^2 = 1 within 1e-12.
  explicit StateVector(ComplexVector amplitudes);

  // Rescales to unit norm; throws kInvalidInput on a zero vector.
  static StateVector normalized(ComplexVector amplitudes);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  struct Unchecked {};
  StateVector(ComplexVector amplitudes, Unchecked) : amplitudes_(std::move(amplitudes)) {}

  ComplexVector amplitudes_;
};

bool all_finite(const ComplexMatrix& m);

ComplexMatrix haar_random_unitary(std::size_t n, Rng& rng);
ComplexMatrix haar_random_unitary(std::size_t n, std::uint64_t seed);

// Uniformly distributed (Haar) pure state of dimension n.
StateVector random_state(std::size_t n, Rng& rng);

// || M^dagger M - I ||_F <= tol.
bool is_unitary(const ComplexMatrix& m, double tol);

// 1 - |<psi| U_ideal^dagger U_actual |psi>|^2.
double state_infidelity(const ComplexMatrix& u_ideal, const ComplexMatrix& u_actual,
                        const StateVector& psi);

// (1 / 4N) || U_actual - U_ideal ||_F^2, the second-order estimate of the
// input-averaged infidelity.
double matrix_error(const ComplexMatrix& u_ideal, const ComplexMatrix& u_actual);

// min over gamma of || U - e^{i gamma} V ||_F, aligned through arg Tr(V^dagger U).
double distance_up_to_global_phase(const ComplexMatrix& u, const ComplexMatrix& v);

ComplexMatrix dft_matrix(std::size_t n);

}  // namespace gm
