#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "gm/errors.hpp"
#include "gm/fock.hpp"
#include "gm/mzi.hpp"

namespace gm {
namespace {

Complex naive_permanent(const ComplexMatrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total = 0.0;
  do {
    Complex prod = 1.0;
    for (std::size_t r = 0; r < n; ++r) prod *= m(static_cast<Eigen::Index>(r), perm[r]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

ComplexMatrix random_complex(std::size_t n, Rng& rng) {
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    m.data()[k] = Complex(re, im);
  }
  return m;
}

// Enumerate every pattern of k photons in n modes by brute-force recursion.
void all_patterns(std::size_t n, unsigned k, OccupationVector& cur, std::size_t mode,
                  std::vector<OccupationVector>& out) {
  if (mode + 1 == n) {
    cur[mode] = k;
    out.push_back(cur);
    return;
  }
  for (unsigned c = 0; c <= k; ++c) {
    cur[mode] = c;
    all_patterns(n, k - c, cur, mode + 1, out);
  }
}

std::vector<OccupationVector> all_patterns(std::size_t n, unsigned k) {
  std::vector<OccupationVector> out;
  OccupationVector cur(n, 0);
  all_patterns(n, k, cur, 0, out);
  return out;
}

TEST(Permanent, SmallCases) {
  EXPECT_NEAR(std::abs(permanent(ComplexMatrix::Identity(2, 2)) - 1.0), 0.0, 1e-15);
  ComplexMatrix m(2, 2);
  m << Complex(1, 2), Complex(3, -1), Complex(0.5, 0), Complex(-2, 1);
  EXPECT_NEAR(std::abs(permanent(m) - (m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(permanent(ComplexMatrix::Ones(3, 3)) - 6.0), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(permanent(ComplexMatrix(0, 0)) - 1.0), 0.0, 0.0);
}

TEST(Permanent, RyserMatchesEnumeration) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 6;
    const ComplexMatrix m = random_complex(n, rng);
    const Complex a = permanent(m);
    const Complex b = naive_permanent(m);
    EXPECT_LT(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(b)));
  }
}

TEST(Permanent, SizeGuard) {
  EXPECT_NO_THROW(permanent(ComplexMatrix::Ones(8, 8)));
  try {
    permanent(ComplexMatrix::Ones(9, 9));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSizeLimit);
  }
}

TEST(OutputAmplitude, HongOuMandel) {
  const ComplexMatrix bs = ideal_transfer(std::numbers::pi / 2, 0.0);
  EXPECT_LT(std::abs(output_amplitude(bs, {1, 1}, {1, 1})), 1e-12);
  EXPECT_NEAR(std::norm(output_amplitude(bs, {1, 1}, {2, 0})), 0.5, 1e-12);
}

TEST(OutputAmplitude, IdentityAndMismatch) {
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  EXPECT_NEAR(std::abs(output_amplitude(id, {2, 0, 1}, {2, 0, 1}) - 1.0), 0.0, 1e-14);
  try {
    output_amplitude(id, {1, 0, 0}, {1, 1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidPattern);
  }
}

TEST(OutputAmplitude, NormalizedOverAllPatterns) {
  const ComplexMatrix u = haar_random_unitary(4, 31);
  const auto patterns = all_patterns(4, 2);
  EXPECT_EQ(patterns.size(), 10u);
  double total = 0.0;
  for (const auto& out : patterns) total += std::norm(output_amplitude(u, {1, 1, 0, 0}, out));
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(FockBasis, RankIsABijection) {
  for (auto [n, k] : {std::pair<std::size_t, unsigned>{4, 3}, {8, 2}, {5, 5}, {1, 4}}) {
    const FockBasis basis(n, k);
    const auto patterns = all_patterns(n, k);
    ASSERT_EQ(basis.size(), patterns.size());
    std::vector<bool> hit(basis.size(), false);
    for (const auto& p : patterns) {
      const std::size_t r = basis.rank(p);
      ASSERT_LT(r, basis.size());
      EXPECT_FALSE(hit[r]);
      hit[r] = true;
      EXPECT_EQ(basis.pattern(r), p);
    }
  }
}

TEST(FockBasis, SizeLimit) {
  EXPECT_EQ(FockBasis::dimension(32, 6), 2324784u);
  try {
    FockBasis(32, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSizeLimit);
  }
}

TEST(Evolve, MatchesPermanentAmplitudes) {
  Rng rng(8);
  for (const OccupationVector& in : {OccupationVector{1, 1, 0, 0}, OccupationVector{0, 2, 1, 0},
                                     OccupationVector{1, 1, 1, 1, 0}, OccupationVector{3, 0, 0}}) {
    const ComplexMatrix u = haar_random_unitary(in.size(), rng);
    const FockDistribution d = evolve(u, in);
    for (std::size_t s = 0; s < d.size(); ++s) {
      const OccupationVector out = d.basis().pattern(s);
      EXPECT_LT(std::abs(d.amplitudes()(static_cast<Eigen::Index>(s)) - output_amplitude(u, in, out)), 1e-12);
    }
  }
}

TEST(Evolve, PreservesProbability) {
  Rng rng(9);
  for (std::size_t n : {4u, 8u}) {
    for (unsigned k : {1u, 2u, 3u}) {
      const ComplexMatrix u = haar_random_unitary(n, rng);
      OccupationVector in(n, 0);
      for (unsigned p = 0; p < k; ++p) in[p] += 1;
      EXPECT_NEAR(evolve(u, in).total_probability(), 1.0, 1e-10);
    }
  }
}

TEST(Evolve, SinglePhotonIsAColumn) {
  const ComplexMatrix u = haar_random_unitary(6, 4);
  OccupationVector in(6, 0);
  in[2] = 1;
  const FockDistribution d = evolve(u, in);
  for (std::size_t i = 0; i < 6; ++i) {
    OccupationVector out(6, 0);
    out[i] = 1;
    EXPECT_NEAR(d.probability(out), std::norm(u(static_cast<Eigen::Index>(i), 2)), 1e-14);
  }
}

TEST(Evolve, BunchingInLargeRegister) {
  ComplexMatrix u = ComplexMatrix::Identity(32, 32);
  u.block(15, 15, 2, 2) = ideal_transfer(std::numbers::pi / 2, 0.0);
  OccupationVector in(32, 0);
  in[15] = in[16] = 1;
  const FockDistribution d = evolve(u, in);
  OccupationVector a(32, 0), b(32, 0);
  a[15] = 2;
  b[16] = 2;
  EXPECT_NEAR(d.probability(a) + d.probability(b), 1.0, 1e-12);
}

TEST(Evolve, UniformLossScalesSurvival) {
  const double g = 0.9;
  const ComplexMatrix u = g * ComplexMatrix::Identity(8, 8);
  const FockDistribution d = evolve(u, {1, 1, 1, 1, 1, 1, 0, 0});
  EXPECT_NEAR(d.total_probability(), std::pow(g, 12), 1e-12);
}

// Treating the photons as distinguishable (adding probabilities instead of
// amplitudes) removes the dip at a balanced splitter.
TEST(Evolve, DistinguishableControl) {
  const ComplexMatrix bs = ideal_transfer(std::numbers::pi / 2, 0.0);
  const double quantum = evolve(bs, {1, 1}).probability({1, 1});
  const double classical = std::norm(bs(0, 0) * bs(1, 1)) + std::norm(bs(0, 1) * bs(1, 0));
  EXPECT_NEAR(quantum, 0.0, 1e-12);
  EXPECT_NEAR(classical, 0.5, 1e-12);
}

TEST(Evolve, Superposition) {
  const ComplexMatrix u = haar_random_unitary(4, 12);
  const double r = 1.0 / std::sqrt(2.0);
  const FockDistribution d = evolve(u, {{r, {1, 0, 1, 0}}, {-r, {0, 1, 0, 1}}});
  EXPECT_NEAR(d.total_probability(), 1.0, 1e-12);
  const FockDistribution a = evolve(u, {1, 0, 1, 0});
  const FockDistribution b = evolve(u, {0, 1, 0, 1});
  EXPECT_LT((d.amplitudes() - r * (a.amplitudes() - b.amplitudes())).norm(), 1e-14);
}

}  // namespace
}  // namespace gm
