#include "gm/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gm/errors.hpp"

namespace gm {
namespace {

void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw Error(ErrorKind::kInvalidDimension,
                std::string(what) + ": expected two square matrices of equal size, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw Error(ErrorKind::kInvalidDimension, "empty state vector");
  const double norm2 = amplitudes_.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-12) {
    throw Error(ErrorKind::kInvalidInput,
                "state vector is not normalized (norm^2 = " + std::to_string(norm2) + ")");
  }
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::kInvalidInput, "cannot normalize a zero or non-finite state");
  }
  amplitudes /= norm;
  return StateVector(std::move(amplitudes), Unchecked{});
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorKind::kInvalidDimension, "basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v), Unchecked{});
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const Complex z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix haar_random_unitary(std::size_t n, Rng& rng) {
  if (n == 0) throw Error(ErrorKind::kInvalidDimension, "haar_random_unitary: n must be >= 1");
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix z(dim, dim);
  const double scale = 1.0 / std::numbers::sqrt2;
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      z(r, c) = Complex(re, im) * scale;
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Q R is unique only up to a diagonal phase; fixing diag(R) > 0 makes Q Haar.
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

ComplexMatrix haar_random_unitary(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_unitary(n, rng);
}

StateVector random_state(std::size_t n, Rng& rng) {
  if (n == 0) throw Error(ErrorKind::kInvalidDimension, "random_state: n must be >= 1");
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    v(k) = Complex(re, im);
  }
  return StateVector::normalized(std::move(v));
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kInvalidDimension, "is_unitary: matrix is not square");
  }
  const ComplexMatrix gram = m.adjoint() * m;
  return (gram - ComplexMatrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

double state_infidelity(const ComplexMatrix& u_ideal, const ComplexMatrix& u_actual,
                        const StateVector& psi) {
  require_same_square(u_ideal, u_actual, "state_infidelity");
  if (static_cast<Eigen::Index>(psi.dim()) != u_ideal.rows()) {
    throw Error(ErrorKind::kInvalidDimension, "state_infidelity: state dimension mismatch");
  }
  const ComplexVector a = u_ideal * psi.amplitudes();
  const ComplexVector b = u_actual * psi.amplitudes();
  return 1.0 - std::norm(a.dot(b));
}

double matrix_error(const ComplexMatrix& u_ideal, const ComplexMatrix& u_actual) {
  require_same_square(u_ideal, u_actual, "matrix_error");
  const double n = static_cast<double>(u_ideal.rows());
  return (u_actual - u_ideal).squaredNorm() / (4.0 * n);
}

double distance_up_to_global_phase(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw Error(ErrorKind::kInvalidDimension, "distance_up_to_global_phase: shape mismatch");
  }
  const Complex overlap = (v.adjoint() * u).trace();
  const double mag = std::abs(overlap);
  const Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
  return (u - phase * v).norm();
}

ComplexMatrix dft_matrix(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix f(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(r * c) / static_cast<double>(n);
      f(r, c) = std::polar(scale, angle);
    }
  }
  return f;
}

}  // namespace gm
