#pragma once

#include "skx/ring.hpp"

namespace skx {

// Everything the eavesdropper gets to see: the public string and both
// published keys. The attack code depends on nothing else.
struct Transcript {
    SymbolString generator;     // g
    SymbolString alice_public;  // A
    SymbolString bob_public;    // B
};

// One symbol per component, satisfying
//   (w * g_k + 1) * e_k + g_k == A_k  (mod p)
// for the transcript it was recovered from. A single step with e_k then
// reproduces the whole keystream fold for component k.
struct EffectiveKey {
    SymbolString symbols;
};

// e_k = (w * g_k + 1)^-1 * (A_k - g_k) mod p per component. Throws
// AttackInfeasibleError naming the first component whose coefficient is
// not invertible (possible only when p has odd factors).
EffectiveKey recover_effective_key(const RingParams& ring, const SymbolString& generator,
                                   const SymbolString& public_key);

// One qc_step of each B_k by e_k: the shared secret.
SymbolString recover_shared(const RingParams& ring, const EffectiveKey& key,
                            const SymbolString& peer_public);

// Full pipeline over a captured transcript.
SymbolString recover_from_transcript(const RingParams& ring, const Transcript& transcript);

}  // namespace skx
