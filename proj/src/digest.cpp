#include "skx/digest.hpp"

#include <openssl/evp.h>

#include <string>

#include "skx/errors.hpp"

namespace skx {
namespace {

class EvpDigest : public Digest {
public:
    EvpDigest(const EVP_MD* md, std::size_t length) : md_(md), length_(length) {}

    std::size_t length() const override { return length_; }

    Bytes compute(ByteView data) const override {
        Bytes out(length_);
        unsigned int written = 0;
        static const std::uint8_t empty = 0;
        const std::uint8_t* ptr = data.empty() ? &empty : data.data();
        if (EVP_Digest(ptr, data.size(), out.data(), &written, md_, nullptr) != 1 ||
            written != length_) {
            throw Error("digest computation failed");
        }
        return out;
    }

private:
    const EVP_MD* md_;
    std::size_t length_;
};

// Deterministic one-byte digest for small exhaustive tests:
// (sum of input bytes + 1) mod 256.
class StubSumDigest : public Digest {
public:
    std::size_t length() const override { return 1; }

    Bytes compute(ByteView data) const override {
        std::uint8_t acc = 0;
        for (std::uint8_t b : data) {
            acc = static_cast<std::uint8_t>(acc + b);
        }
        return Bytes{static_cast<std::uint8_t>(acc + 1)};
    }
};

}  // namespace

const Digest& digest_for(DigestKind kind) {
    static const EvpDigest sha512(EVP_sha512(), 64);
    static const EvpDigest sha256(EVP_sha256(), 32);
    static const StubSumDigest stub;
    switch (kind) {
        case DigestKind::sha512: return sha512;
        case DigestKind::sha256: return sha256;
        case DigestKind::stub_sum: return stub;
    }
    throw ValidationError("unknown digest kind");
}

std::string_view digest_name(DigestKind kind) {
    switch (kind) {
        case DigestKind::sha512: return "sha512";
        case DigestKind::sha256: return "sha256";
        case DigestKind::stub_sum: return "stub";
    }
    throw ValidationError("unknown digest kind");
}

std::optional<DigestKind> digest_from_name(std::string_view name) {
    if (name == "sha512") return DigestKind::sha512;
    if (name == "sha256") return DigestKind::sha256;
    if (name == "stub") return DigestKind::stub_sum;
    return std::nullopt;
}

std::optional<DigestKind> digest_from_id(std::uint8_t id) {
    switch (id) {
        case 1: return DigestKind::sha512;
        case 2: return DigestKind::sha256;
        case 3: return DigestKind::stub_sum;
        default: return std::nullopt;
    }
}

HashChain::HashChain(const Digest& d, ByteView seed)
    : digest_(&d), current_(d.compute(seed)), step_(1) {}

void HashChain::advance() {
    current_ = digest_->compute(current_);
    ++step_;
}

SymbolString to_symbols(ByteView digest_bytes, const RingParams& ring) {
    if (ring.p > 256) {
        throw ValidationError("no symbol mapping for p > 256 (got p = " +
                              std::to_string(ring.p) + ")");
    }
    SymbolString s;
    s.symbols.reserve(digest_bytes.size());
    for (std::uint8_t b : digest_bytes) {
        s.symbols.push_back(b % ring.p);
    }
    return s;
}

}  // namespace skx
