#include "skx/wire.hpp"

#include <array>
#include <sstream>
#include <thread>
#include <utility>

#include "skx/attack.hpp"
#include "skx/errors.hpp"
#include "skx/hex.hpp"

namespace skx {
namespace {

void put_u16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_u32(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::uint32_t get_u32(ByteView b) {
    return (static_cast<std::uint32_t>(b[0]) << 24) |
           (static_cast<std::uint32_t>(b[1]) << 16) |
           (static_cast<std::uint32_t>(b[2]) << 8) | b[3];
}

bool valid_type(std::uint8_t t) {
    return t >= static_cast<std::uint8_t>(FrameType::hello) &&
           t <= static_cast<std::uint8_t>(FrameType::confirm);
}

// Socket I/O with a byte-level log of both directions.
class FramedIo {
public:
    explicit FramedIo(Socket& sock) : sock_(&sock) {}

    void send(const Frame& frame) {
        const Bytes encoded = encode_frame(frame);
        sock_->write_all(encoded);
        sent_.insert(sent_.end(), encoded.begin(), encoded.end());
    }

    Frame receive() {
        Frame frame;
        std::array<std::uint8_t, 5> header{};
        read_exact(header);
        const std::uint32_t length = get_u32(ByteView(header.data(), 4));
        if (length > kMaxFramePayload) {
            throw ParseError("frame payload of " + std::to_string(length) +
                             " bytes exceeds the cap");
        }
        if (!valid_type(header[4])) {
            throw ParseError("unknown frame type " + std::to_string(header[4]));
        }
        frame.type = static_cast<FrameType>(header[4]);
        frame.payload.resize(length);
        read_exact(frame.payload);
        return frame;
    }

    Bytes take_sent() { return std::move(sent_); }
    Bytes take_received() { return std::move(received_); }

private:
    void read_exact(std::span<std::uint8_t> buf) {
        std::size_t off = 0;
        while (off < buf.size()) {
            const std::size_t n = sock_->read_some(buf.subspan(off));
            if (n == 0) {
                throw ProtocolError("connection closed mid-exchange");
            }
            received_.insert(received_.end(), buf.begin() + off, buf.begin() + off + n);
            off += n;
        }
    }

    Socket* sock_;
    Bytes sent_;
    Bytes received_;
};

Frame expect(FramedIo& io, FrameType type) {
    Frame frame = io.receive();
    if (frame.type != type) {
        throw ProtocolError("expected frame type " +
                            std::to_string(static_cast<int>(type)) + ", got " +
                            std::to_string(static_cast<int>(frame.type)));
    }
    return frame;
}

Bytes confirm_digest(const ProtocolConfig& cfg, const SymbolString& key,
                     std::uint8_t role) {
    Bytes material = key.to_bytes();
    material.push_back(role);
    return digest_for(cfg.digest).compute(material);
}

SymbolString key_from_payload(const ProtocolConfig& cfg, const Bytes& payload,
                              const char* what) {
    if (payload.size() != cfg.key_length) {
        throw ProtocolError(std::string(what) + " has length " +
                            std::to_string(payload.size()) + ", expected K = " +
                            std::to_string(cfg.key_length));
    }
    SymbolString s = SymbolString::from_bytes(payload);
    require_in_ring(cfg.ring, s);
    return s;
}

}  // namespace

Bytes encode_frame(const Frame& frame) {
    if (frame.payload.size() > kMaxFramePayload) {
        throw ValidationError("frame payload exceeds the cap");
    }
    Bytes out;
    out.reserve(5 + frame.payload.size());
    put_u32(out, static_cast<std::uint32_t>(frame.payload.size()));
    out.push_back(static_cast<std::uint8_t>(frame.type));
    out.insert(out.end(), frame.payload.begin(), frame.payload.end());
    return out;
}

void FrameReader::feed(ByteView data) {
    if (error_) {
        return;
    }
    buffer_.insert(buffer_.end(), data.begin(), data.end());
    while (buffer_.size() >= 5) {
        const std::uint32_t length = get_u32(ByteView(buffer_.data(), 4));
        if (length > kMaxFramePayload) {
            error_ = "frame payload of " + std::to_string(length) + " bytes exceeds the cap";
            buffer_.clear();
            return;
        }
        if (!valid_type(buffer_[4])) {
            error_ = "unknown frame type " + std::to_string(buffer_[4]);
            buffer_.clear();
            return;
        }
        if (buffer_.size() < 5 + static_cast<std::size_t>(length)) {
            return;
        }
        Frame frame;
        frame.type = static_cast<FrameType>(buffer_[4]);
        frame.payload.assign(buffer_.begin() + 5, buffer_.begin() + 5 + length);
        buffer_.erase(buffer_.begin(), buffer_.begin() + 5 + length);
        ready_.push_back(std::move(frame));
    }
}

std::optional<Frame> FrameReader::next() {
    if (ready_.empty()) {
        return std::nullopt;
    }
    Frame frame = std::move(ready_.front());
    ready_.pop_front();
    return frame;
}

Bytes HelloPayload::encode() const {
    Bytes out;
    out.reserve(7);
    out.push_back(version);
    put_u16(out, p);
    out.push_back(w);
    put_u16(out, key_length);
    out.push_back(digest_id);
    return out;
}

HelloPayload HelloPayload::decode(ByteView payload) {
    if (payload.size() != 7) {
        throw ParseError("HELLO payload must be 7 bytes, got " +
                         std::to_string(payload.size()));
    }
    HelloPayload h;
    h.version = payload[0];
    h.p = static_cast<std::uint16_t>((payload[1] << 8) | payload[2]);
    h.w = payload[3];
    h.key_length = static_cast<std::uint16_t>((payload[4] << 8) | payload[5]);
    h.digest_id = payload[6];
    return h;
}

HelloPayload HelloPayload::from_config(const ProtocolConfig& cfg) {
    HelloPayload h;
    h.version = 1;
    if (cfg.ring.p > 0xffff || cfg.ring.w > 0xff || cfg.key_length > 0xffff) {
        throw ValidationError("parameters do not fit the HELLO encoding");
    }
    h.p = static_cast<std::uint16_t>(cfg.ring.p);
    h.w = static_cast<std::uint8_t>(cfg.ring.w);
    h.key_length = static_cast<std::uint16_t>(cfg.key_length);
    h.digest_id = static_cast<std::uint8_t>(cfg.digest);
    return h;
}

ProtocolConfig HelloPayload::to_config() const {
    if (version != 1) {
        throw ValidationError("unsupported protocol version " + std::to_string(version));
    }
    const auto kind = digest_from_id(digest_id);
    if (!kind) {
        throw ValidationError("unknown digest id " + std::to_string(digest_id));
    }
    return ProtocolConfig(RingParams(p, w), *kind, key_length);
}

WireResult run_initiator(Socket& conn, const ProtocolConfig& cfg, Rng& rng,
                         std::size_t secret_length) {
    FramedIo io(conn);
    const HelloPayload proposal = HelloPayload::from_config(cfg);
    io.send(Frame{FrameType::hello, proposal.encode()});

    const Frame reply = expect(io, FrameType::hello);
    const HelloPayload echoed = HelloPayload::decode(reply.payload);
    if (echoed != proposal) {
        throw ValidationError("peer rejected parameters; counter-offer: p=" +
                              std::to_string(echoed.p) + " w=" + std::to_string(echoed.w) +
                              " K=" + std::to_string(echoed.key_length));
    }

    const SymbolString generator = random_generator(cfg, rng);
    const SymbolString secret = random_secret(cfg.ring, rng, secret_length);
    Session session(cfg, generator, secret);

    io.send(Frame{FrameType::generator, generator.to_bytes()});
    io.send(Frame{FrameType::public_key, session.public_key().to_bytes()});

    const Frame peer_key = expect(io, FrameType::public_key);
    session.receive_peer_public(key_from_payload(cfg, peer_key.payload, "peer public key"));
    const SymbolString& key = session.shared_key();

    io.send(Frame{FrameType::confirm, confirm_digest(cfg, key, kRoleInitiator)});
    const Frame peer_confirm = expect(io, FrameType::confirm);

    WireResult result;
    result.shared_key = key;
    result.confirm_verified =
        peer_confirm.payload == confirm_digest(cfg, key, kRoleResponder);
    if (!result.confirm_verified) {
        throw ProtocolError("responder key confirmation failed");
    }
    result.sent_stream = io.take_sent();
    result.received_stream = io.take_received();
    return result;
}

WireResult run_responder(Socket& conn, const ProtocolConfig& cfg, Rng& rng,
                         std::size_t secret_length) {
    FramedIo io(conn);
    const Frame hello = expect(io, FrameType::hello);
    const HelloPayload proposal = HelloPayload::decode(hello.payload);
    const HelloPayload own = HelloPayload::from_config(cfg);
    if (proposal != own) {
        io.send(Frame{FrameType::hello, own.encode()});
        conn.shutdown_send();
        throw ValidationError("rejected proposal p=" + std::to_string(proposal.p) +
                              " w=" + std::to_string(proposal.w) +
                              " K=" + std::to_string(proposal.key_length) +
                              " version=" + std::to_string(proposal.version) +
                              " digest=" + std::to_string(proposal.digest_id));
    }
    io.send(Frame{FrameType::hello, own.encode()});

    const Frame generator_frame = expect(io, FrameType::generator);
    const SymbolString generator =
        key_from_payload(cfg, generator_frame.payload, "generator");
    const SymbolString secret = random_secret(cfg.ring, rng, secret_length);
    Session session(cfg, generator, secret);

    const Frame peer_key = expect(io, FrameType::public_key);
    session.receive_peer_public(key_from_payload(cfg, peer_key.payload, "peer public key"));

    io.send(Frame{FrameType::public_key, session.public_key().to_bytes()});
    const SymbolString& key = session.shared_key();
    io.send(Frame{FrameType::confirm, confirm_digest(cfg, key, kRoleResponder)});

    const Frame peer_confirm = expect(io, FrameType::confirm);

    WireResult result;
    result.shared_key = key;
    result.confirm_verified =
        peer_confirm.payload == confirm_digest(cfg, key, kRoleInitiator);
    if (!result.confirm_verified) {
        throw ProtocolError("initiator key confirmation failed");
    }
    result.sent_stream = io.take_sent();
    result.received_stream = io.take_received();
    return result;
}

namespace {

// One direction of the relay: copy src -> dst verbatim, keeping a copy.
void pump(Socket& src, Socket& dst, Bytes& captured, std::string& io_error) {
    std::array<std::uint8_t, 4096> buf{};
    try {
        while (true) {
            const std::size_t n = src.read_some(buf);
            if (n == 0) {
                dst.shutdown_send();
                return;
            }
            captured.insert(captured.end(), buf.begin(), buf.begin() + n);
            dst.write_all(ByteView(buf.data(), n));
        }
    } catch (const Error& e) {
        io_error = e.what();
    }
}

struct DirectionCapture {
    FrameReader reader;
    std::vector<Frame> frames;

    void drain() {
        while (auto frame = reader.next()) {
            frames.push_back(std::move(*frame));
        }
    }
};

}  // namespace

TapReport run_tap(Socket& client_conn, Socket& upstream_conn) {
    TapReport report;
    std::string up_error, down_error;

    std::thread up([&] {
        pump(client_conn, upstream_conn, report.upstream_bytes, up_error);
    });
    std::thread down([&] {
        pump(upstream_conn, client_conn, report.downstream_bytes, down_error);
    });
    up.join();
    down.join();

    if (!up_error.empty()) report.notes.push_back("upstream relay: " + up_error);
    if (!down_error.empty()) report.notes.push_back("downstream relay: " + down_error);

    // Interpret copies of both streams after relaying is done.
    DirectionCapture upstream, downstream;
    upstream.reader.feed(report.upstream_bytes);
    upstream.drain();
    if (upstream.reader.failed()) {
        report.notes.push_back("upstream parse: " + upstream.reader.error());
    }
    downstream.reader.feed(report.downstream_bytes);
    downstream.drain();
    if (downstream.reader.failed()) {
        report.notes.push_back("downstream parse: " + downstream.reader.error());
    }

    std::optional<HelloPayload> proposal;
    for (const Frame& frame : upstream.frames) {
        switch (frame.type) {
            case FrameType::hello:
                if (!proposal) {
                    try {
                        proposal = HelloPayload::decode(frame.payload);
                    } catch (const Error& e) {
                        report.notes.push_back(std::string("HELLO decode: ") + e.what());
                    }
                }
                break;
            case FrameType::generator:
                if (!report.generator) report.generator = frame.payload;
                break;
            case FrameType::public_key:
                if (!report.public_a) report.public_a = frame.payload;
                break;
            case FrameType::confirm:
                if (!report.confirm_a) report.confirm_a = frame.payload;
                break;
        }
    }
    report.hello = proposal;
    for (const Frame& frame : downstream.frames) {
        switch (frame.type) {
            case FrameType::hello:
                // Any downstream HELLO that differs from the proposal is a
                // rejection; an identical echo is the accept signal.
                if (proposal && frame.payload != proposal->encode()) {
                    report.rejected = true;
                }
                break;
            case FrameType::public_key:
                if (!report.public_b) report.public_b = frame.payload;
                break;
            case FrameType::confirm:
                if (!report.confirm_b) report.confirm_b = frame.payload;
                break;
            case FrameType::generator:
                report.notes.push_back("unexpected GENERATOR from responder");
                break;
        }
    }

    if (!report.capture_complete()) {
        report.notes.push_back("partial capture: session did not expose g, A and B");
        return report;
    }

    try {
        const ProtocolConfig cfg = report.hello->to_config();
        Transcript transcript;
        transcript.generator = key_from_payload(cfg, *report.generator, "generator");
        transcript.alice_public = key_from_payload(cfg, *report.public_a, "public key A");
        transcript.bob_public = key_from_payload(cfg, *report.public_b, "public key B");
        const SymbolString key = recover_from_transcript(cfg.ring, transcript);
        report.recovered_key = key.to_bytes();

        if (report.confirm_a) {
            report.confirm_a_verified =
                *report.confirm_a == confirm_digest(cfg, key, kRoleInitiator);
        }
        if (report.confirm_b) {
            report.confirm_b_verified =
                *report.confirm_b == confirm_digest(cfg, key, kRoleResponder);
        }
    } catch (const AttackInfeasibleError& e) {
        report.attack_error = e.what();
    } catch (const Error& e) {
        report.attack_error = e.what();
    }
    return report;
}

std::string format_report(const TapReport& report) {
    std::ostringstream out;
    const auto hex_field = [&](const char* name, const std::optional<Bytes>& v) {
        if (v) {
            out << name << ":\n" << to_hex_wrapped(*v);
        } else {
            out << name << ": (not captured)\n";
        }
    };
    if (report.hello) {
        out << "observed parameters: p=" << report.hello->p
            << " w=" << static_cast<int>(report.hello->w)
            << " K=" << report.hello->key_length << " digest=";
        const auto kind = digest_from_id(report.hello->digest_id);
        out << (kind ? digest_name(*kind) : "unknown") << "\n";
    } else {
        out << "observed parameters: (no HELLO captured)\n";
    }
    if (report.rejected) {
        out << "responder rejected the proposal\n";
    }
    hex_field("generator g", report.generator);
    hex_field("public key A", report.public_a);
    hex_field("public key B", report.public_b);
    if (report.recovered_key) {
        hex_field("recovered shared key", report.recovered_key);
        out << "confirm A " << (report.confirm_a_verified ? "verified" : "NOT verified")
            << ", confirm B " << (report.confirm_b_verified ? "verified" : "NOT verified")
            << "\n";
    } else if (report.attack_error) {
        out << "attack failed: " << *report.attack_error << "\n";
    }
    for (const std::string& note : report.notes) {
        out << "note: " << note << "\n";
    }
    out << "relayed " << report.upstream_bytes.size() << " bytes upstream, "
        << report.downstream_bytes.size() << " bytes downstream\n";
    return out.str();
}

}  // namespace skx
