#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "gm/numerics.hpp"

namespace gm {

using OccupationVector = std::vector<unsigned>;

unsigned photon_count(const OccupationVector& occ);

inline constexpr std::size_t kMaxPermanentSize = 8;
inline constexpr std::size_t kMaxFockDimension = 1000000;

// Ryser's formula with Gray-code subset updates. Throws kSizeLimit above 8x8.
Complex permanent(const ComplexMatrix& m);

// <output| U |input> for Fock states: Perm(U[out rows, in cols]) / sqrt(prod out! prod in!).
Complex output_amplitude(const ComplexMatrix& u, const OccupationVector& input, const OccupationVector& output);

// All occupation patterns of k photons in n modes, indexed by colex rank of
// the sorted photon positions.
class FockBasis {
 public:
  FockBasis(std::size_t n_modes, std::size_t n_photons);

  std::size_t n_modes() const { return n_modes_; }
  std::size_t n_photons() const { return n_photons_; }
  std::size_t size() const { return size_; }

  std::size_t rank(const OccupationVector& occ) const;
  OccupationVector pattern(std::size_t index) const;

  static std::size_t dimension(std::size_t n_modes, std::size_t n_photons);

 private:
  std::size_t n_modes_;
  std::size_t n_photons_;
  std::size_t size_;
};

class FockDistribution {
 public:
  FockDistribution(std::shared_ptr<const FockBasis> basis, ComplexVector amplitudes);

  std::size_t n_modes() const { return basis_->n_modes(); }
  std::size_t n_photons() const { return basis_->n_photons(); }
  std::size_t size() const { return basis_->size(); }
  const FockBasis& basis() const { return *basis_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }

  Complex amplitude(const OccupationVector& occ) const;
  double probability(const OccupationVector& occ) const { return std::norm(amplitude(occ)); }
  double total_probability() const { return amplitudes_.squaredNorm(); }

 private:
  std::shared_ptr<const FockBasis> basis_;
  ComplexVector amplitudes_;
};

// Output distribution of a Fock input. For sub-unitary U the amplitudes are
// left unnormalized; their total weight is the all-photon survival probability.
FockDistribution evolve(const ComplexMatrix& u, const OccupationVector& input);

// Linear superposition of Fock inputs with the same photon number.
FockDistribution evolve(const ComplexMatrix& u,
                        const std::vector<std::pair<Complex, OccupationVector>>& input);

}  // namespace gm
