#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace gm {

using Rng = std::mt19937_64;

// Mixes a master seed with a path of integer keys (experiment, sample,
// element, ...) into an independent stream seed. Streams derived from
// distinct key paths are statistically independent, so sample loops can run
// in any order or in parallel and still reproduce bit-for-bit.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

inline Rng make_rng(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  return Rng(derive_seed(master, keys));
}

// Uniform in [0, 1) with 53 bits of resolution.
double uniform01(Rng& rng);

// Box-Muller; used instead of std::normal_distribution so draws do not depend
// on the standard library implementation.
double standard_normal(Rng& rng);

inline double normal(Rng& rng, double sigma) { return sigma * standard_normal(rng); }

}  // namespace gm
