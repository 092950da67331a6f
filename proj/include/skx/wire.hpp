#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "skx/digest.hpp"
#include "skx/net.hpp"
#include "skx/protocol.hpp"
#include "skx/ring.hpp"
#include "skx/rng.hpp"

namespace skx {

// Wire format: u32 big-endian payload length | u8 type | payload.
enum class FrameType : std::uint8_t {
    hello = 0x01,
    generator = 0x02,
    public_key = 0x03,
    confirm = 0x04,
};

struct Frame {
    FrameType type;
    Bytes payload;

    bool operator==(const Frame&) const = default;
};

// Untrusted-input cap on payload size.
inline constexpr std::size_t kMaxFramePayload = 1u << 20;

// Role bytes mixed into the CONFIRM digests so the two directions differ.
inline constexpr std::uint8_t kRoleInitiator = 0x01;
inline constexpr std::uint8_t kRoleResponder = 0x02;

Bytes encode_frame(const Frame& frame);

// Incremental decoder for a byte stream arriving in arbitrary chunks.
// feed() never throws; a malformed stream (unknown type, oversized
// length) parks the reader in an error state and discards further input.
class FrameReader {
public:
    void feed(ByteView data);
    std::optional<Frame> next();

    bool failed() const { return error_.has_value(); }
    const std::string& error() const { return *error_; }

    // True when no partial frame is buffered.
    bool idle() const { return buffer_.empty(); }

private:
    Bytes buffer_;
    std::deque<Frame> ready_;
    std::optional<std::string> error_;
};

// Parameter-agreement payload of HELLO frames:
// u8 version | u16be p | u8 w | u16be K | u8 digest id.
struct HelloPayload {
    std::uint8_t version = 1;
    std::uint16_t p = 0;
    std::uint8_t w = 0;
    std::uint16_t key_length = 0;
    std::uint8_t digest_id = 0;

    bool operator==(const HelloPayload&) const = default;

    Bytes encode() const;
    static HelloPayload decode(ByteView payload);

    static HelloPayload from_config(const ProtocolConfig& cfg);
    ProtocolConfig to_config() const;
};

// One endpoint's outcome, with the raw streams kept for passivity checks.
struct WireResult {
    SymbolString shared_key;
    bool confirm_verified = false;
    Bytes sent_stream;
    Bytes received_stream;
};

// Blocking single-session endpoints. The initiator proposes `cfg` in
// HELLO and sends generator and public key only after the responder
// echoes the proposal back; the responder rejects a non-matching
// proposal by answering with its own parameters and closing.
WireResult run_initiator(Socket& conn, const ProtocolConfig& cfg, Rng& rng,
                         std::size_t secret_length);
WireResult run_responder(Socket& conn, const ProtocolConfig& cfg, Rng& rng,
                         std::size_t secret_length);

// What the passive relay saw and deduced. Raw relayed bytes are retained
// per direction so forwarding fidelity can be audited.
struct TapReport {
    std::optional<HelloPayload> hello;
    bool rejected = false;
    std::optional<Bytes> generator;
    std::optional<Bytes> public_a;   // initiator's key, first PUBKEY upstream
    std::optional<Bytes> public_b;   // responder's key, first PUBKEY downstream
    std::optional<Bytes> confirm_a;
    std::optional<Bytes> confirm_b;

    std::optional<Bytes> recovered_key;
    bool confirm_a_verified = false;
    bool confirm_b_verified = false;
    std::optional<std::string> attack_error;

    Bytes upstream_bytes;    // initiator -> responder, as relayed
    Bytes downstream_bytes;  // responder -> initiator, as relayed

    std::vector<std::string> notes;

    bool capture_complete() const { return hello && generator && public_a && public_b; }
    bool verified() const { return confirm_a_verified && confirm_b_verified; }
};

// Forwards bytes between the two sockets until both directions close,
// parsing a copy of each direction in transit. Strictly passive: the
// relayed stream is never altered, reordered, or truncated, even when
// parsing fails.
TapReport run_tap(Socket& client_conn, Socket& upstream_conn);

std::string format_report(const TapReport& report);

}  // namespace skx
