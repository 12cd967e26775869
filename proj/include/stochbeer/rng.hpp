#pragma once

#include <cstdint>

namespace stochbeer
{
//! SplitMix64 finalizer: a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

//! Seed of path `index` in an ensemble. Depends only on (master, index), so
//! ensembles are reproducible whatever order paths are evaluated in.
constexpr std::uint64_t path_seed(std::uint64_t master, std::uint64_t index)
{
    return mix64(master ^ mix64(index + 0xD1B54A32D192ED03ull));
}

}  // namespace stochbeer
