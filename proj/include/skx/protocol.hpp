#pragma once

#include <cstdint>
#include <optional>

#include "skx/digest.hpp"
#include "skx/ring.hpp"
#include "skx/rng.hpp"

namespace skx {

// Public context both parties agree on: ring parameters, digest choice,
// and the public-string length K.
struct ProtocolConfig {
    RingParams ring;
    DigestKind digest;
    std::size_t key_length;  // K, in symbols

    ProtocolConfig(RingParams ring_, DigestKind digest_, std::size_t key_length_);

    bool operator==(const ProtocolConfig&) const = default;
};

// Reference-simulation defaults: p=256, w=2, K=127, N=253, M=121.
inline constexpr std::uint32_t kDefaultModulus = 256;
inline constexpr std::uint32_t kDefaultMultiplier = 2;
inline constexpr std::size_t kDefaultKeyLength = 127;
inline constexpr std::size_t kDefaultInitiatorSecretLength = 253;
inline constexpr std::size_t kDefaultResponderSecretLength = 121;

// The composite transform: component k of x is folded with the symbols
// of the (k+1)-th chained digest of the secret, all L of them.
SymbolString chain_transform(const ProtocolConfig& cfg, const SymbolString& x,
                             ByteView secret);

// Step 1: the public string both parties fold their secrets into.
SymbolString random_generator(const ProtocolConfig& cfg, Rng& rng);

// Steps 2/4: a uniform secret over [0, p). The no-length overload draws
// the length uniformly from [16, 256].
SymbolString random_secret(const RingParams& ring, Rng& rng, std::size_t length);
SymbolString random_secret(const RingParams& ring, Rng& rng);

// Steps 3/5: the published key W(generator, secret).
SymbolString derive_public(const ProtocolConfig& cfg, const SymbolString& generator,
                           const SymbolString& secret);

// Steps 6/7: the shared key W(peer_public, secret). Both parties obtain
// the same string.
SymbolString derive_shared(const ProtocolConfig& cfg, const SymbolString& peer_public,
                           const SymbolString& secret);

// One party's view of a single exchange, sequencing the protocol steps.
// Deriving the shared key before a peer key has been received is refused,
// as is receiving a peer key twice.
class Session {
public:
    Session(ProtocolConfig cfg, SymbolString generator, SymbolString secret);

    const ProtocolConfig& config() const { return cfg_; }
    const SymbolString& generator() const { return generator_; }
    const SymbolString& public_key() const { return public_key_; }

    void receive_peer_public(SymbolString peer_public);
    bool has_peer_public() const { return peer_public_.has_value(); }

    const SymbolString& shared_key();

private:
    ProtocolConfig cfg_;
    SymbolString generator_;
    SymbolString secret_;
    SymbolString public_key_;
    std::optional<SymbolString> peer_public_;
    std::optional<SymbolString> shared_;
};

}  // namespace skx
