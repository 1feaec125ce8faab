#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace emt {

using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline bool coin(Rng& rng) { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; }

}  // namespace emt
