#include "gm/fock.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "gm/errors.hpp"

namespace gm {
namespace {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(unsigned k) {
  double f = 1.0;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

std::vector<Eigen::Index> expand(const OccupationVector& occ) {
  std::vector<Eigen::Index> idx;
  for (std::size_t m = 0; m < occ.size(); ++m)
    for (unsigned c = 0; c < occ[m]; ++c) idx.push_back(static_cast<Eigen::Index>(m));
  return idx;
}

// raise[s * n + i] is the index, in the (k+1)-photon basis, of pattern s of
// the k-photon basis with one more photon in mode i. Cached per (n, k) since
// the same small bases are reused for every sample of a sweep.
struct RaiseTable {
  std::vector<std::uint32_t> target;
  std::vector<double> factor;  // sqrt of the new occupation of mode i
};

const RaiseTable& raise_table(std::size_t n, std::size_t k) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<RaiseTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, k}];
  if (!slot) {
    const FockBasis from(n, k);
    const FockBasis to(n, k + 1);
    auto table = std::make_unique<RaiseTable>();
    table->target.resize(from.size() * n);
    table->factor.resize(from.size() * n);
    for (std::size_t s = 0; s < from.size(); ++s) {
      OccupationVector occ = from.pattern(s);
      for (std::size_t i = 0; i < n; ++i) {
        occ[i] += 1;
        table->target[s * n + i] = static_cast<std::uint32_t>(to.rank(occ));
        table->factor[s * n + i] = std::sqrt(static_cast<double>(occ[i]));
        occ[i] -= 1;
      }
    }
    slot = std::move(table);
  }
  return *slot;
}

// Applies the creation operator sum_i u(i, col) a_i^dagger to a k-photon state.
ComplexVector add_photon(const FockBasis& from, const FockBasis& to, const ComplexVector& state,
                         const ComplexMatrix& u, Eigen::Index col) {
  const std::size_t n = from.n_modes();
  const RaiseTable& table = raise_table(n, from.n_photons());
  ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(to.size()));
  for (std::size_t s = 0; s < from.size(); ++s) {
    const Complex amp = state(static_cast<Eigen::Index>(s));
    if (amp == Complex(0.0, 0.0)) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex coeff = u(static_cast<Eigen::Index>(i), col);
      out(table.target[s * n + i]) += coeff * (table.factor[s * n + i] * amp);
    }
  }
  return out;
}

}  // namespace

unsigned photon_count(const OccupationVector& occ) {
  unsigned total = 0;
  for (unsigned c : occ) total += c;
  return total;
}

Complex permanent(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::kInvalidDimension, "permanent: matrix is not square");
  const auto n = static_cast<std::size_t>(m.rows());
  if (n > kMaxPermanentSize) {
    throw Error(ErrorKind::kSizeLimit, "permanent: size " + std::to_string(n) + " exceeds the 8x8 limit");
  }
  if (n == 0) return {1.0, 0.0};
  // perm(M) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} M_ij, walking the
  // subsets in Gray-code order so each step adds or removes one column.
  ComplexVector row_sums = ComplexVector::Zero(static_cast<Eigen::Index>(n));
  Complex total = 0.0;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
    const std::uint64_t next = k ^ (k >> 1);
    const std::uint64_t flipped = next ^ gray;
    const auto col = static_cast<Eigen::Index>(__builtin_ctzll(flipped));
    if (next & flipped) {
      row_sums += m.col(col);
    } else {
      row_sums -= m.col(col);
    }
    gray = next;
    Complex prod = row_sums.prod();
    if (__builtin_popcountll(gray) % 2 == 1) prod = -prod;
    total += prod;
  }
  return (n % 2 == 1) ? -total : total;
}

Complex output_amplitude(const ComplexMatrix& u, const OccupationVector& input, const OccupationVector& output) {
  if (u.rows() != u.cols() || input.size() != static_cast<std::size_t>(u.cols()) ||
      output.size() != static_cast<std::size_t>(u.rows())) {
    throw Error(ErrorKind::kInvalidDimension, "output_amplitude: pattern length does not match U");
  }
  if (photon_count(input) != photon_count(output)) {
    throw Error(ErrorKind::kInvalidPattern, "output_amplitude: input has " + std::to_string(photon_count(input)) +
                                                " photons but output has " + std::to_string(photon_count(output)));
  }
  const std::vector<Eigen::Index> rows = expand(output);
  const std::vector<Eigen::Index> cols = expand(input);
  ComplexMatrix sub(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = u(rows[r], cols[c]);
  double norm = 1.0;
  for (unsigned c : input) norm *= factorial(c);
  for (unsigned c : output) norm *= factorial(c);
  return permanent(sub) / std::sqrt(norm);
}

std::size_t FockBasis::dimension(std::size_t n_modes, std::size_t n_photons) {
  if (n_modes == 0) return n_photons == 0 ? 1 : 0;
  return static_cast<std::size_t>(binomial(n_modes + n_photons - 1, n_photons));
}

FockBasis::FockBasis(std::size_t n_modes, std::size_t n_photons)
    : n_modes_(n_modes), n_photons_(n_photons), size_(0) {
  if (n_modes == 0) throw Error(ErrorKind::kInvalidDimension, "Fock basis needs at least one mode");
  if (n_modes + n_photons > 60) throw Error(ErrorKind::kSizeLimit, "Fock basis too large");
  size_ = dimension(n_modes, n_photons);
  if (size_ > kMaxFockDimension) {
    throw Error(ErrorKind::kSizeLimit, "Fock space of " + std::to_string(n_photons) + " photons in " +
                                           std::to_string(n_modes) + " modes has dimension " +
                                           std::to_string(size_) + " > 1e6");
  }
}

// Photons at sorted positions m_1 <= ... <= m_k map to the strictly increasing
// combination c_i = m_i + i - 1, ranked colexicographically as sum C(c_i, i).
std::size_t FockBasis::rank(const OccupationVector& occ) const {
  if (occ.size() != n_modes_ || photon_count(occ) != n_photons_) {
    throw Error(ErrorKind::kInvalidPattern, "pattern does not belong to this Fock basis");
  }
  std::uint64_t r = 0;
  std::size_t i = 0;
  for (std::size_t m = 0; m < occ.size(); ++m) {
    for (unsigned c = 0; c < occ[m]; ++c) {
      ++i;
      r += binomial(m + i - 1, i);
    }
  }
  return static_cast<std::size_t>(r);
}

OccupationVector FockBasis::pattern(std::size_t index) const {
  if (index >= size_) throw Error(ErrorKind::kInvalidPattern, "Fock basis index out of range");
  OccupationVector occ(n_modes_, 0);
  std::uint64_t r = index;
  std::size_t upper = n_modes_ + n_photons_ - 1;
  for (std::size_t i = n_photons_; i >= 1; --i) {
    std::size_t c = i - 1;
    while (c + 1 < upper && binomial(c + 1, i) <= r) ++c;
    r -= binomial(c, i);
    occ[c - (i - 1)] += 1;
    upper = c;
  }
  return occ;
}

FockDistribution::FockDistribution(std::shared_ptr<const FockBasis> basis, ComplexVector amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_ || amplitudes_.size() != static_cast<Eigen::Index>(basis_->size())) {
    throw Error(ErrorKind::kInvalidDimension, "distribution size does not match its basis");
  }
}

Complex FockDistribution::amplitude(const OccupationVector& occ) const {
  return amplitudes_(static_cast<Eigen::Index>(basis_->rank(occ)));
}

FockDistribution evolve(const ComplexMatrix& u, const std::vector<std::pair<Complex, OccupationVector>>& input) {
  if (u.rows() != u.cols()) throw Error(ErrorKind::kInvalidDimension, "evolve: U must be square");
  if (input.empty()) throw Error(ErrorKind::kInvalidPattern, "evolve: empty input superposition");
  const auto n = static_cast<std::size_t>(u.rows());
  const unsigned k = photon_count(input.front().second);
  for (const auto& [coeff, occ] : input) {
    if (occ.size() != n) throw Error(ErrorKind::kInvalidDimension, "evolve: pattern length does not match U");
    if (photon_count(occ) != k) throw Error(ErrorKind::kInvalidPattern, "evolve: mixed photon numbers");
  }
  std::vector<std::shared_ptr<const FockBasis>> bases;
  for (unsigned p = 0; p <= k; ++p) bases.push_back(std::make_shared<const FockBasis>(n, p));

  ComplexVector total = ComplexVector::Zero(static_cast<Eigen::Index>(bases[k]->size()));
  for (const auto& [coeff, occ] : input) {
    ComplexVector state = ComplexVector::Ones(1);
    unsigned level = 0;
    double norm = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (unsigned c = 0; c < occ[j]; ++c) {
        state = add_photon(*bases[level], *bases[level + 1], state, u, static_cast<Eigen::Index>(j));
        ++level;
      }
      norm *= factorial(occ[j]);
    }
    total += (coeff / std::sqrt(norm)) * state;
  }
  return FockDistribution(bases[k], std::move(total));
}

FockDistribution evolve(const ComplexMatrix& u, const OccupationVector& input) {
  return evolve(u, std::vector<std::pair<Complex, OccupationVector>>{{Complex(1.0, 0.0), input}});
}

}  // namespace gm
