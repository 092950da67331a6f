#include "skx/rng.hpp"

#include "skx/errors.hpp"

namespace skx {

Rng::Rng() {
    std::random_device dev;
    std::seed_seq seq{dev(), dev(), dev(), dev(), dev(), dev(), dev(), dev()};
    engine_.seed(seq);
}

Symbol Rng::symbol(std::uint32_t bound) {
    if (bound == 0) {
        throw ValidationError("symbol bound must be positive");
    }
    return static_cast<Symbol>(uniform(0, bound - 1));
}

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) {
        throw ValidationError("empty range for uniform draw");
    }
    std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
    return dist(engine_);
}

}  // namespace skx
