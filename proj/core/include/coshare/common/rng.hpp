#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace coshare {

// Mersenne Twister engine; all draws go through the helpers below so that
// results do not depend on the standard library's distribution classes.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives an independent stream seed from a master seed and a label
/// (stage name, sample index, ...).
std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Uniform integer in [0, n). n must be > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

double standard_normal(Rng& rng);

/// k distinct indices from [0, population), in draw order (partial Fisher-Yates).
/// Returns all indices when k >= population.
std::vector<std::uint32_t> sample_without_replacement(Rng& rng, std::uint32_t population,
                                                      std::uint32_t k);

template <typename T>
void shuffle_in_place(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace coshare
