#pragma once

// Seed derivation and uniform draws for the Monte Carlo engine.
//
// Run r of an experiment with base seed S uses the generator
//
//     std::mt19937_64 gen(derive_run_seed(S, r));
//
// where derive_run_seed is the splitmix64 finalizer applied to
// S + (r + 1) * 0x9E3779B97F4A7C15. mt19937_64's output sequence is fixed by
// the C++ standard, and uniform01 keeps the top 53 bits of each word, so a
// trajectory can be replayed bit-for-bit in any language.

#include <cstdint>
#include <random>
#include <string_view>

namespace basefee {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
inline constexpr std::string_view kPrngName = "mt19937_64/splitmix64-run-seed/top53-uniform";

constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_run_seed(std::uint64_t base_seed, std::uint64_t run_index)
{
    return mix64(base_seed + (run_index + 1) * kGoldenGamma);
}

using RunEngine = std::mt19937_64;

/// Uniform double in [0, 1).
inline double uniform01(RunEngine& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace basefee
