#pragma once

#include <cstdint>
#include <random>

namespace relbell {

using Rng = std::mt19937_64;

/// Generator for one trial, derived only from (master seed, trial index), so
/// results do not depend on execution order or worker count.
inline Rng trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(trial_index), static_cast<std::uint32_t>(trial_index >> 32),
                      0x62726e73u};
    return Rng(seq);
}

/// splitmix64 finalizer; derives independent master seeds for sub-ensembles.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace relbell
