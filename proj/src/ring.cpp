#include "skx/ring.hpp"

#include <algorithm>
#include <string>

namespace skx {
namespace {

constexpr std::uint32_t kMaxScanModulus = 1u << 16;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

void require_symbol(const RingParams& ring, Symbol value, const char* name) {
    if (value >= ring.p) {
        throw ValidationError(std::string(name) + " out of range: " +
                              std::to_string(value) + " >= p = " + std::to_string(ring.p));
    }
}

}  // namespace

RingParams::RingParams(std::uint32_t p_, std::uint32_t w_) : p(p_), w(w_) {
    if (p < 4 || p % 2 != 0) {
        throw ValidationError("modulus p must be even and >= 4, got " + std::to_string(p));
    }
    if (w < 2 || w % 2 != 0) {
        throw ValidationError("multiplier w must be even and >= 2, got " + std::to_string(w));
    }
}

SymbolString SymbolString::from_bytes(std::span<const std::uint8_t> bytes) {
    SymbolString s;
    s.symbols.assign(bytes.begin(), bytes.end());
    return s;
}

std::vector<std::uint8_t> SymbolString::to_bytes() const {
    std::vector<std::uint8_t> out;
    out.reserve(symbols.size());
    for (Symbol v : symbols) {
        if (v > 0xff) {
            throw ValidationError("symbol " + std::to_string(v) +
                                  " does not fit a byte");
        }
        out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

bool fits_ring(const RingParams& ring, const SymbolString& s) {
    return std::all_of(s.begin(), s.end(), [&](Symbol v) { return v < ring.p; });
}

void require_in_ring(const RingParams& ring, const SymbolString& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= ring.p) {
            throw ValidationError("symbol at index " + std::to_string(i) +
                                  " out of range: " + std::to_string(s[i]) +
                                  " >= p = " + std::to_string(ring.p));
        }
    }
}

Symbol qc_step(const RingParams& ring, Symbol xi, Symbol alpha) {
    require_symbol(ring, xi, "xi");
    require_symbol(ring, alpha, "alpha");
    // (w * alpha + 1) can exceed p; reduce the coefficient first so the
    // remaining product fits 64 bits for any valid p.
    const std::uint64_t coeff =
        (static_cast<std::uint64_t>(ring.w % ring.p) * alpha + 1) % ring.p;
    return static_cast<Symbol>((coeff * xi + alpha) % ring.p);
}

Symbol fold(const RingParams& ring, Symbol xi, const SymbolString& s) {
    require_symbol(ring, xi, "xi");
    Symbol acc = xi;
    for (Symbol alpha : s) {
        acc = qc_step(ring, acc, alpha);
    }
    return acc;
}

AffineMap affine_collapse(const RingParams& ring, const SymbolString& s) {
    require_in_ring(ring, s);
    const std::uint64_t wp = static_cast<std::uint64_t>(ring.w) * ring.p;
    std::uint64_t product = 1;
    for (Symbol alpha : s) {
        const std::uint64_t factor =
            (static_cast<std::uint64_t>(ring.w) * alpha + 1) % wp;
        product = mul_mod(product, factor, wp);
    }
    return AffineMap{product};
}

Symbol affine_apply(const RingParams& ring, const AffineMap& map, Symbol xi) {
    require_symbol(ring, xi, "xi");
    if (map.product % ring.w != 1) {
        throw ValidationError("corrupted affine map: product " +
                              std::to_string(map.product) +
                              " is not congruent to 1 mod w");
    }
    const std::uint64_t offset = ((map.product - 1) / ring.w) % ring.p;
    return static_cast<Symbol>((mul_mod(map.product, xi, ring.p) + offset) % ring.p);
}

std::optional<std::uint64_t> mod_inverse(std::uint64_t x, std::uint64_t m) {
    if (m < 2) {
        throw ValidationError("modulus must be >= 2, got " + std::to_string(m));
    }
    x %= m;
    if (x == 0) {
        return std::nullopt;
    }
    using Wide = __int128;
    Wide r0 = static_cast<Wide>(m), r1 = static_cast<Wide>(x);
    Wide t0 = 0, t1 = 1;
    while (r1 != 0) {
        const Wide q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    if (r0 != 1) {
        return std::nullopt;
    }
    Wide inv = t0 % static_cast<Wide>(m);
    if (inv < 0) {
        inv += static_cast<Wide>(m);
    }
    return static_cast<std::uint64_t>(inv);
}

std::vector<FixedPoint> fixed_points(std::uint32_t p, std::uint64_t w) {
    if (p < 4 || p % 2 != 0) {
        throw ValidationError("modulus p must be even and >= 4, got " + std::to_string(p));
    }
    if (p > kMaxScanModulus) {
        throw ValidationError("fixed-point scan refuses p > 2^16 (got " +
                              std::to_string(p) + ")");
    }
    if (w < 1) {
        throw ValidationError("multiplier w must be >= 1");
    }
    std::vector<FixedPoint> out;
    const std::uint64_t w_mod_p = w % p;
    for (Symbol xi = 0; xi < p; ++xi) {
        std::vector<Symbol> alphas;
        for (Symbol alpha = 1; alpha < p; ++alpha) {
            const std::uint64_t coeff = (w_mod_p * alpha + 1) % p;
            const Symbol stepped = static_cast<Symbol>((coeff * xi + alpha) % p);
            if (stepped == xi) {
                alphas.push_back(alpha);
            }
        }
        if (!alphas.empty()) {
            out.push_back(FixedPoint{xi, std::move(alphas)});
        }
    }
    return out;
}

}  // namespace skx
