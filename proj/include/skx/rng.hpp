#pragma once

#include <cstdint>
#include <random>

#include "skx/ring.hpp"

namespace skx {

// Uniform source for key material. Seedable for reproducible demos;
// otherwise seeded from the OS.
class Rng {
public:
    Rng();
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, bound).
    Symbol symbol(std::uint32_t bound);

    // Uniform in [lo, hi], both inclusive.
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

private:
    std::mt19937_64 engine_;
};

}  // namespace skx
