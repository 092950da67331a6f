#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "skx/errors.hpp"

namespace skx {

using Symbol = std::uint32_t;

// Arithmetic context for the symbol alphabet {0, ..., p-1}.
//
// p must be even and >= 4, w even and >= 2; odd values are rejected at
// construction. With odd w the step function acquires fixed points
// (see fixed_points()), so the evenness of w is load-bearing.
struct RingParams {
    std::uint32_t p;
    std::uint32_t w;

    RingParams(std::uint32_t p_, std::uint32_t w_);

    bool operator==(const RingParams&) const = default;
};

// A finite string over the alphabet [0, p). The bound is not stored;
// operations validate against their RingParams.
struct SymbolString {
    std::vector<Symbol> symbols;

    SymbolString() = default;
    explicit SymbolString(std::vector<Symbol> syms) : symbols(std::move(syms)) {}
    SymbolString(std::initializer_list<Symbol> syms) : symbols(syms) {}

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
    Symbol operator[](std::size_t i) const { return symbols[i]; }

    auto begin() const { return symbols.begin(); }
    auto end() const { return symbols.end(); }

    bool operator==(const SymbolString&) const = default;

    // Byte conversions for hashing and wire I/O; valid while p <= 256.
    static SymbolString from_bytes(std::span<const std::uint8_t> bytes);
    std::vector<std::uint8_t> to_bytes() const;
};

bool fits_ring(const RingParams& ring, const SymbolString& s);
void require_in_ring(const RingParams& ring, const SymbolString& s);

// Collapsed form of fold(): xi -> (product * xi + (product - 1) / w) mod p,
// where product = Prod(w * s_n + 1) over the folded string.
//
// product is kept reduced modulo w*p, not p: the offset term
// (product - 1) / w mod p depends on product mod w*p. Every factor is
// congruent to 1 mod w, so product stays congruent to 1 mod w and the
// offset division is exact.
struct AffineMap {
    std::uint64_t product = 1;  // identity map

    bool operator==(const AffineMap&) const = default;
};

// One quasi-commutative step: ((w * alpha + 1) * xi + alpha) mod p.
Symbol qc_step(const RingParams& ring, Symbol xi, Symbol alpha);

// Left fold of qc_step across s, starting at xi. Empty s returns xi.
Symbol fold(const RingParams& ring, Symbol xi, const SymbolString& s);

// The affine map equivalent to folding s; empty s gives the identity.
AffineMap affine_collapse(const RingParams& ring, const SymbolString& s);

// Applies the collapsed map. Rejects a map whose product is not
// congruent to 1 mod w (a corrupted map).
Symbol affine_apply(const RingParams& ring, const AffineMap& map, Symbol xi);

// Multiplicative inverse of x modulo m (extended Euclid), or nullopt
// when gcd(x, m) > 1. Requires m >= 2.
std::optional<std::uint64_t> mod_inverse(std::uint64_t x, std::uint64_t m);

// All nonzero alphas fixing xi, for each xi that has any:
// qc_step(xi, alpha) == xi  <=>  alpha * (w * xi + 1) == 0 (mod p).
struct FixedPoint {
    Symbol xi;
    std::vector<Symbol> alphas;  // ascending, all nonzero

    bool operator==(const FixedPoint&) const = default;
};

// Exhaustive fixed-point scan. Deliberately accepts any w >= 1 (odd w
// included) so the even/odd dichotomy can be demonstrated; p must be
// even and at most 2^16 (desk-scale analysis tool).
std::vector<FixedPoint> fixed_points(std::uint32_t p, std::uint64_t w);

}  // namespace skx
