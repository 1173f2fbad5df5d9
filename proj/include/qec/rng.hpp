#pragma once

#include <random>
#include <vector>

#include "qec/zmod.hpp"

namespace qec {

/// Unbiased draw in [0, n). mt19937_64 output is fully specified by the
/// standard and rejection keeps the mapping platform-independent, so seeded
/// sequences are reproducible everywhere.
inline u64 uniform_below(std::mt19937_64& rng, u64 n) {
    const u64 accept = (~u64{0}) / n * n;
    u64 x;
    do {
        x = rng();
    } while (x >= accept);
    return x % n;
}

/// Ordered tuple of k distinct values from [0, n); collisions are redrawn.
inline std::vector<u64> sample_distinct(std::mt19937_64& rng, u64 n, std::size_t k) {
    std::vector<u64> out;
    out.reserve(k);
    while (out.size() < k) {
        u64 x = uniform_below(rng, n);
        bool seen = false;
        for (u64 prev : out) seen |= (prev == x);
        if (!seen) out.push_back(x);
    }
    return out;
}

}  // namespace qec
