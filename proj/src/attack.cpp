#include "skx/attack.hpp"

#include <string>

#include "skx/errors.hpp"

namespace skx {

EffectiveKey recover_effective_key(const RingParams& ring, const SymbolString& generator,
                                   const SymbolString& public_key) {
    if (generator.size() != public_key.size()) {
        throw ValidationError("generator and public key lengths differ (" +
                              std::to_string(generator.size()) + " vs " +
                              std::to_string(public_key.size()) + ")");
    }
    require_in_ring(ring, generator);
    require_in_ring(ring, public_key);

    const std::uint64_t p = ring.p;
    EffectiveKey key;
    key.symbols.symbols.reserve(generator.size());
    for (std::size_t k = 0; k < generator.size(); ++k) {
        const std::uint64_t coeff =
            (static_cast<std::uint64_t>(ring.w % ring.p) * generator[k] + 1) % p;
        const auto inv = mod_inverse(coeff, p);
        if (!inv) {
            throw AttackInfeasibleError(
                "component " + std::to_string(k) + ": " + std::to_string(coeff) +
                    " is not invertible mod " + std::to_string(p),
                k);
        }
        const std::uint64_t diff = (p + public_key[k] - generator[k]) % p;
        key.symbols.symbols.push_back(static_cast<Symbol>((*inv * diff) % p));
    }
    return key;
}

SymbolString recover_shared(const RingParams& ring, const EffectiveKey& key,
                            const SymbolString& peer_public) {
    if (key.symbols.size() != peer_public.size()) {
        throw ValidationError("effective key and peer public key lengths differ (" +
                              std::to_string(key.symbols.size()) + " vs " +
                              std::to_string(peer_public.size()) + ")");
    }
    require_in_ring(ring, key.symbols);
    require_in_ring(ring, peer_public);

    SymbolString shared;
    shared.symbols.reserve(peer_public.size());
    for (std::size_t k = 0; k < peer_public.size(); ++k) {
        shared.symbols.push_back(qc_step(ring, peer_public[k], key.symbols[k]));
    }
    return shared;
}

SymbolString recover_from_transcript(const RingParams& ring, const Transcript& transcript) {
    const EffectiveKey key =
        recover_effective_key(ring, transcript.generator, transcript.alice_public);
    return recover_shared(ring, key, transcript.bob_public);
}

}  // namespace skx
