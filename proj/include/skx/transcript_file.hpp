#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "skx/digest.hpp"
#include "skx/protocol.hpp"

namespace skx {

// Labeled-hex text document carrying exchange state between CLI
// invocations. Layout:
//
//   p: 256
//   w: 2
//   K: 127
//   digest: sha512
//   g:
//   93444ff1...        (lowercase hex, wrapped at 64 chars)
//   ...
//
// Hex values are whitespace-insensitive on input and may continue over
// any number of lines until the next `label:` line. Fields g/A/B carry
// public key material; a/b/sa/sb are secret; eve is the eavesdropper's
// result. parse() checks syntax only; validate() checks the domain
// invariants of whatever fields are present.
struct TranscriptFile {
    std::optional<std::uint32_t> p;
    std::optional<std::uint32_t> w;
    std::optional<std::uint32_t> key_length;  // K
    std::optional<DigestKind> digest;

    std::optional<Bytes> generator;   // g
    std::optional<Bytes> secret_a;    // a
    std::optional<Bytes> secret_b;    // b
    std::optional<Bytes> public_a;    // A
    std::optional<Bytes> public_b;    // B
    std::optional<Bytes> shared_a;    // sa
    std::optional<Bytes> shared_b;    // sb
    std::optional<Bytes> recovered;   // eve

    static TranscriptFile parse(std::string_view text);
    std::string serialize() const;

    bool has_secret_fields() const;

    // Ring/digest/K fields assembled into a ProtocolConfig; throws
    // ValidationError if any of them is missing or invalid.
    ProtocolConfig config() const;
};

// Invariants of present fields: p/w pass RingParams validation, hex
// fields decode to strings of the declared length K (secrets excepted;
// they only need length >= 1), and all symbols are below p.
void validate(const TranscriptFile& t);

TranscriptFile load_transcript(const std::string& path);
void store_transcript(const std::string& path, const TranscriptFile& t);

}  // namespace skx
