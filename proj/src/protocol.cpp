#include "skx/protocol.hpp"

#include <string>
#include <utility>

#include "skx/errors.hpp"

namespace skx {

ProtocolConfig::ProtocolConfig(RingParams ring_, DigestKind digest_,
                               std::size_t key_length_)
    : ring(ring_), digest(digest_), key_length(key_length_) {
    if (key_length < 1) {
        throw ValidationError("public-string length K must be >= 1");
    }
    if (ring.p > 256) {
        throw ValidationError("protocol requires p <= 256 (digest bytes map to symbols)");
    }
}

SymbolString chain_transform(const ProtocolConfig& cfg, const SymbolString& x,
                             ByteView secret) {
    if (x.size() != cfg.key_length) {
        throw ValidationError("input length " + std::to_string(x.size()) +
                              " does not match K = " + std::to_string(cfg.key_length));
    }
    require_in_ring(cfg.ring, x);
    if (secret.empty()) {
        throw ValidationError("secret must be nonempty");
    }
    const Digest& d = digest_for(cfg.digest);
    HashChain chain(d, secret);
    SymbolString out;
    out.symbols.reserve(cfg.key_length);
    for (std::size_t k = 0; k < cfg.key_length; ++k) {
        if (k > 0) {
            chain.advance();
        }
        const SymbolString stream = to_symbols(chain.current(), cfg.ring);
        out.symbols.push_back(fold(cfg.ring, x[k], stream));
    }
    return out;
}

SymbolString random_generator(const ProtocolConfig& cfg, Rng& rng) {
    SymbolString g;
    g.symbols.reserve(cfg.key_length);
    for (std::size_t i = 0; i < cfg.key_length; ++i) {
        g.symbols.push_back(rng.symbol(cfg.ring.p));
    }
    return g;
}

SymbolString random_secret(const RingParams& ring, Rng& rng, std::size_t length) {
    if (length < 1) {
        throw ValidationError("secret length must be >= 1");
    }
    SymbolString s;
    s.symbols.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        s.symbols.push_back(rng.symbol(ring.p));
    }
    return s;
}

SymbolString random_secret(const RingParams& ring, Rng& rng) {
    return random_secret(ring, rng, rng.uniform(16, 256));
}

SymbolString derive_public(const ProtocolConfig& cfg, const SymbolString& generator,
                           const SymbolString& secret) {
    require_in_ring(cfg.ring, secret);
    return chain_transform(cfg, generator, secret.to_bytes());
}

SymbolString derive_shared(const ProtocolConfig& cfg, const SymbolString& peer_public,
                           const SymbolString& secret) {
    require_in_ring(cfg.ring, secret);
    return chain_transform(cfg, peer_public, secret.to_bytes());
}

Session::Session(ProtocolConfig cfg, SymbolString generator, SymbolString secret)
    : cfg_(std::move(cfg)),
      generator_(std::move(generator)),
      secret_(std::move(secret)),
      public_key_(derive_public(cfg_, generator_, secret_)) {}

void Session::receive_peer_public(SymbolString peer_public) {
    if (peer_public_) {
        throw ProtocolError("peer public key already received");
    }
    if (peer_public.size() != cfg_.key_length) {
        throw ValidationError("peer public key has length " +
                              std::to_string(peer_public.size()) + ", expected K = " +
                              std::to_string(cfg_.key_length));
    }
    require_in_ring(cfg_.ring, peer_public);
    peer_public_ = std::move(peer_public);
}

const SymbolString& Session::shared_key() {
    if (!peer_public_) {
        throw ProtocolError("shared key requested before the peer public key arrived");
    }
    if (!shared_) {
        shared_ = derive_shared(cfg_, *peer_public_, secret_);
    }
    return *shared_;
}

}  // namespace skx
