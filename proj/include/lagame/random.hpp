#ifndef LAGAME_RANDOM_HPP
#define LAGAME_RANDOM_HPP

#include <concepts>
#include <cstdint>
#include <random>

namespace lagame {

// Default stream for every simulation. The engine's output sequence is fixed
// by the standard, so seeded runs agree across standard libraries.
using Rng = std::mt19937_64;

template <class G>
concept Random64 = std::uniform_random_bit_generator<G> &&
    std::same_as<typename G::result_type, std::uint64_t> &&
    G::min() == 0 && G::max() == ~std::uint64_t{0};

// Uniform double in [0, 1) built from the top 53 bits of one draw.
// std::generate_canonical is not used: its draw count and rounding are
// implementation-defined.
template <Random64 G>
inline double uniform01(G& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Seed of replica `run` in an ensemble with base seed `seed`.
inline std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t run) {
  return seed ^ run;
}

}  // namespace lagame

#endif  // LAGAME_RANDOM_HPP
