#include <doctest.h>

#include <random>
#include <vector>

#include "skx/attack.hpp"
#include "skx/errors.hpp"
#include "skx/protocol.hpp"

using namespace skx;

namespace {

SymbolString random_string(const RingParams& ring, std::mt19937& gen, std::size_t len) {
    std::uniform_int_distribution<Symbol> pick(0, ring.p - 1);
    std::vector<Symbol> s(len);
    for (auto& v : s) v = pick(gen);
    return SymbolString(s);
}

bool next_string(std::vector<Symbol>& s, Symbol p) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (++s[i] < p) return true;
        s[i] = 0;
    }
    return false;
}

}  // namespace

TEST_CASE("effective key recovery, worked micro example") {
    const RingParams ring(8, 2);
    // inv(2*3+1, 8) = 7; 7 * ((2 - 3) mod 8) = 49 = 1 (mod 8)
    const EffectiveKey key = recover_effective_key(ring, SymbolString{3}, SymbolString{2});
    CHECK(key.symbols == SymbolString{1});
    CHECK(recover_shared(ring, key, SymbolString{6}) == SymbolString{3});
}

TEST_CASE("identical generator and public key give the all-zero key") {
    const RingParams ring(256, 2);
    const SymbolString g{10, 20, 30};
    const EffectiveKey key = recover_effective_key(ring, g, g);
    CHECK(key.symbols == SymbolString{0, 0, 0});
    // a zero effective key steps every component to itself
    CHECK(recover_shared(ring, key, SymbolString{7, 8, 9}) == SymbolString{7, 8, 9});
}

TEST_CASE("recovery validates lengths") {
    const RingParams ring(256, 2);
    CHECK_THROWS_AS(recover_effective_key(ring, SymbolString{1}, SymbolString{1, 2}),
                    ValidationError);
    CHECK_THROWS_AS(recover_shared(ring, EffectiveKey{SymbolString{1}},
                                   SymbolString{1, 2}),
                    ValidationError);
}

TEST_CASE("recovered key satisfies the public-key relation componentwise") {
    const ProtocolConfig cfg(RingParams(256, 2), DigestKind::sha512, 32);
    std::mt19937 gen(61);
    for (int trial = 0; trial < 20; ++trial) {
        const SymbolString g = random_string(cfg.ring, gen, cfg.key_length);
        const SymbolString a = random_string(cfg.ring, gen, 1 + gen() % 300);
        const SymbolString pub = derive_public(cfg, g, a);
        const EffectiveKey key = recover_effective_key(cfg.ring, g, pub);
        for (std::size_t k = 0; k < g.size(); ++k) {
            REQUIRE(qc_step(cfg.ring, g[k], key.symbols[k]) == pub[k]);
        }
    }
}

TEST_CASE("full transcript recovery equals the honest shared key") {
    const ProtocolConfig cfg(RingParams(256, 2), DigestKind::sha512, 16);
    std::mt19937 gen(67);
    for (int trial = 0; trial < 50; ++trial) {
        const SymbolString g = random_string(cfg.ring, gen, cfg.key_length);
        const SymbolString a = random_string(cfg.ring, gen, 1 + gen() % 300);
        const SymbolString b = random_string(cfg.ring, gen, 1 + gen() % 300);
        const SymbolString pub_a = derive_public(cfg, g, a);
        const SymbolString pub_b = derive_public(cfg, g, b);
        const SymbolString shared = derive_shared(cfg, pub_b, a);
        REQUIRE(derive_shared(cfg, pub_a, b) == shared);

        REQUIRE(recover_from_transcript(cfg.ring, Transcript{g, pub_a, pub_b}) == shared);
        // Swapped roles work the same way: treat B as the inverted key.
        REQUIRE(recover_from_transcript(cfg.ring, Transcript{g, pub_b, pub_a}) == shared);
    }
}

TEST_CASE("one effective step reproduces any keystream fold, exhaustively") {
    // For every generator symbol and every keystream of length <= 4 at
    // p = 8: the recovered e matches the fold's affine action on every
    // possible peer symbol, and 1 + w*e is the affine product mod w*p.
    for (std::uint32_t w : {2u, 4u}) {
        const RingParams ring(8, w);
        const std::uint64_t wp = static_cast<std::uint64_t>(w) * ring.p;
        long mismatches = 0;
        for (std::size_t len = 0; len <= 4; ++len) {
            std::vector<Symbol> stream(len, 0);
            do {
                const SymbolString keystream(stream);
                const AffineMap map = affine_collapse(ring, keystream);
                for (Symbol g = 0; g < ring.p; ++g) {
                    const Symbol pub = fold(ring, g, keystream);
                    const EffectiveKey key =
                        recover_effective_key(ring, SymbolString{g}, SymbolString{pub});
                    const Symbol e = key.symbols[0];
                    if ((static_cast<std::uint64_t>(w) * e + 1) % wp != map.product % wp)
                        ++mismatches;
                    for (Symbol peer = 0; peer < ring.p; ++peer) {
                        if (qc_step(ring, peer, e) != fold(ring, peer, keystream))
                            ++mismatches;
                    }
                }
            } while (next_string(stream, ring.p));
        }
        CHECK(mismatches == 0);
    }
}

TEST_CASE("moduli with odd factors can make components non-invertible") {
    const RingParams ring(12, 2);
    // 2*1 + 1 = 3 shares a factor with 12.
    try {
        recover_effective_key(ring, SymbolString{0, 1}, SymbolString{5, 5});
        FAIL("expected AttackInfeasibleError");
    } catch (const AttackInfeasibleError& e) {
        CHECK(e.component() == 1);
    }
    // All coefficients coprime to 12 still work: g = 0 gives coefficient 1.
    const EffectiveKey key = recover_effective_key(ring, SymbolString{0}, SymbolString{5});
    CHECK(key.symbols == SymbolString{5});
}
