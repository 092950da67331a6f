#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "skx/ring.hpp"

namespace skx {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Enumerator values double as the wire identifiers.
enum class DigestKind : std::uint8_t {
    sha512 = 1,
    sha256 = 2,
    stub_sum = 3,  // single byte (sum of input bytes + 1) mod 256; tests only
};

// Deterministic fixed-output-length digest over arbitrary-length input.
class Digest {
public:
    virtual ~Digest() = default;
    virtual std::size_t length() const = 0;
    virtual Bytes compute(ByteView data) const = 0;
};

// Shared stateless instances.
const Digest& digest_for(DigestKind kind);

std::string_view digest_name(DigestKind kind);
std::optional<DigestKind> digest_from_name(std::string_view name);
std::optional<DigestKind> digest_from_id(std::uint8_t id);

// Iterated digest state: d(seed) after construction, then d(d(seed)),
// d(d(d(seed))), ... after each advance(). Only the first application
// sees the raw seed; every later one hashes the previous digest value.
class HashChain {
public:
    HashChain(const Digest& d, ByteView seed);

    void advance();
    const Bytes& current() const { return current_; }
    std::uint64_t step() const { return step_; }

private:
    const Digest* digest_;
    Bytes current_;
    std::uint64_t step_;
};

// Digest bytes as alphabet symbols: identity when p = 256, each byte
// reduced mod p when p < 256. p > 256 is rejected (no symbol extraction
// is defined for wider alphabets in this release).
SymbolString to_symbols(ByteView digest_bytes, const RingParams& ring);

}  // namespace skx
