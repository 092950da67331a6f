#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "skx/attack.hpp"
#include "skx/digest.hpp"
#include "skx/errors.hpp"
#include "skx/hex.hpp"
#include "skx/net.hpp"
#include "skx/protocol.hpp"
#include "skx/ring.hpp"
#include "skx/rng.hpp"
#include "skx/transcript_file.hpp"
#include "skx/wire.hpp"

namespace {

using namespace skx;

// Exit codes: 0 success, 2 parse, 3 validation, 4 attack infeasible,
// 5 protocol failure / internal mismatch.
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitMismatch = 5;

struct CommonOpts {
    std::uint32_t p = kDefaultModulus;
    std::uint32_t w = kDefaultMultiplier;
    std::size_t key_length = kDefaultKeyLength;
    std::size_t secret_a_length = kDefaultInitiatorSecretLength;
    std::size_t secret_b_length = kDefaultResponderSecretLength;
    std::optional<std::uint64_t> seed;
    std::string digest = "sha512";

    ProtocolConfig config() const {
        const auto kind = digest_from_name(digest);
        if (!kind) {
            throw ValidationError("unknown digest '" + digest + "'");
        }
        return ProtocolConfig(RingParams(p, w), *kind, key_length);
    }

    Rng rng() const { return seed ? Rng(*seed) : Rng(); }
};

void add_param_flags(CLI::App* cmd, CommonOpts& opts, bool with_secret_lengths = true) {
    cmd->add_option("--p", opts.p, "symbol alphabet size (even, >= 4)");
    cmd->add_option("--w", opts.w, "step multiplier (even, >= 2)");
    cmd->add_option("--K", opts.key_length, "public string length in symbols");
    if (with_secret_lengths) {
        cmd->add_option("--N", opts.secret_a_length, "alice secret length");
        cmd->add_option("--M", opts.secret_b_length, "bob secret length");
    }
    cmd->add_option("--seed", opts.seed, "seed the generator for reproducible output");
    cmd->add_option("--digest", opts.digest, "sha512 | sha256 | stub")
        ->check(CLI::IsMember({"sha512", "sha256", "stub"}));
}

void print_block(std::ostream& out, const std::string& label, const SymbolString& value) {
    out << label << ":\n" << to_hex_wrapped(value.to_bytes());
}

int cmd_demo(const CommonOpts& opts, const std::string& out_path) {
    const ProtocolConfig cfg = opts.config();
    Rng rng = opts.rng();

    const SymbolString generator = random_generator(cfg, rng);
    const SymbolString secret_a = random_secret(cfg.ring, rng, opts.secret_a_length);
    const SymbolString secret_b = random_secret(cfg.ring, rng, opts.secret_b_length);

    Session alice(cfg, generator, secret_a);
    Session bob(cfg, generator, secret_b);
    alice.receive_peer_public(bob.public_key());
    bob.receive_peer_public(alice.public_key());
    const SymbolString shared_a = alice.shared_key();
    const SymbolString shared_b = bob.shared_key();

    const Transcript transcript{generator, alice.public_key(), bob.public_key()};
    const SymbolString recovered = recover_from_transcript(cfg.ring, transcript);

    std::ostream& out = std::cout;
    out << "parameters: p=" << opts.p << " w=" << opts.w << " K=" << opts.key_length
        << " N=" << opts.secret_a_length << " M=" << opts.secret_b_length
        << " digest=" << opts.digest;
    if (opts.seed) {
        out << " seed=" << *opts.seed;
    }
    out << "\n";
    print_block(out, "generator g", generator);
    print_block(out, "alice secret a", secret_a);
    print_block(out, "bob secret b", secret_b);
    print_block(out, "alice public A", alice.public_key());
    print_block(out, "bob public B", bob.public_key());
    print_block(out, "alice shared sa", shared_a);
    print_block(out, "bob shared sb", shared_b);
    print_block(out, "eve recovered", recovered);

    if (!out_path.empty()) {
        TranscriptFile t;
        t.p = opts.p;
        t.w = opts.w;
        t.key_length = static_cast<std::uint32_t>(opts.key_length);
        t.digest = cfg.digest;
        t.generator = generator.to_bytes();
        t.secret_a = secret_a.to_bytes();
        t.secret_b = secret_b.to_bytes();
        t.public_a = alice.public_key().to_bytes();
        t.public_b = bob.public_key().to_bytes();
        t.shared_a = shared_a.to_bytes();
        t.shared_b = shared_b.to_bytes();
        t.recovered = recovered.to_bytes();
        store_transcript(out_path, t);
    }

    if (shared_a != shared_b) {
        out << "status: MISMATCH, the two derived keys differ\n";
        return kExitMismatch;
    }
    if (recovered != shared_a) {
        out << "status: MISMATCH, recovered key differs from the shared key\n";
        return kExitMismatch;
    }
    out << "status: shared keys match; eavesdropper recovered the key\n";
    return 0;
}

int cmd_keygen(const CommonOpts& opts, const std::string& out_path,
               const std::string& secrets_path) {
    const ProtocolConfig cfg = opts.config();
    Rng rng = opts.rng();

    TranscriptFile pub;
    pub.p = opts.p;
    pub.w = opts.w;
    pub.key_length = static_cast<std::uint32_t>(opts.key_length);
    pub.digest = cfg.digest;
    pub.generator = random_generator(cfg, rng).to_bytes();
    store_transcript(out_path, pub);

    TranscriptFile sec;
    sec.p = opts.p;
    sec.w = opts.w;
    sec.key_length = static_cast<std::uint32_t>(opts.key_length);
    sec.digest = cfg.digest;
    sec.secret_a = random_secret(cfg.ring, rng, opts.secret_a_length).to_bytes();
    sec.secret_b = random_secret(cfg.ring, rng, opts.secret_b_length).to_bytes();
    store_transcript(secrets_path, sec);
    return 0;
}

void check_same_params(const TranscriptFile& x, const TranscriptFile& y) {
    if (x.p != y.p || x.w != y.w || x.key_length != y.key_length ||
        x.digest != y.digest) {
        throw ValidationError("transcript and secrets files declare different parameters");
    }
}

const Bytes& require_field(const std::optional<Bytes>& field, const char* name) {
    if (!field) {
        throw ValidationError(std::string("missing field '") + name + "'");
    }
    return *field;
}

int cmd_pub(const std::string& in_path, const std::string& secrets_path,
            const std::string& party, const std::string& out_path) {
    TranscriptFile pub = load_transcript(in_path);
    const TranscriptFile sec = load_transcript(secrets_path);
    validate(pub);
    validate(sec);
    check_same_params(pub, sec);

    const ProtocolConfig cfg = pub.config();
    const SymbolString generator =
        SymbolString::from_bytes(require_field(pub.generator, "g"));
    const bool alice = party == "alice";
    const Bytes& secret_bytes =
        require_field(alice ? sec.secret_a : sec.secret_b, alice ? "a" : "b");
    const SymbolString secret = SymbolString::from_bytes(secret_bytes);

    const SymbolString public_key = derive_public(cfg, generator, secret);
    (alice ? pub.public_a : pub.public_b) = public_key.to_bytes();
    store_transcript(out_path.empty() ? in_path : out_path, pub);
    print_block(std::cout, alice ? "alice public A" : "bob public B", public_key);
    return 0;
}

int cmd_shared(const std::string& in_path, const std::string& secrets_path,
               const std::string& party, const std::string& out_path) {
    const TranscriptFile pub = load_transcript(in_path);
    TranscriptFile sec = load_transcript(secrets_path);
    validate(pub);
    validate(sec);
    check_same_params(pub, sec);

    const ProtocolConfig cfg = pub.config();
    const bool alice = party == "alice";
    const Bytes& peer_public_bytes =
        require_field(alice ? pub.public_b : pub.public_a, alice ? "B" : "A");
    const Bytes& secret_bytes =
        require_field(alice ? sec.secret_a : sec.secret_b, alice ? "a" : "b");

    const SymbolString shared =
        derive_shared(cfg, SymbolString::from_bytes(peer_public_bytes),
                      SymbolString::from_bytes(secret_bytes));
    (alice ? sec.shared_a : sec.shared_b) = shared.to_bytes();
    store_transcript(out_path.empty() ? secrets_path : out_path, sec);
    print_block(std::cout, alice ? "alice shared sa" : "bob shared sb", shared);
    return 0;
}

int cmd_attack(const std::string& in_path, const std::string& out_path) {
    TranscriptFile t = load_transcript(in_path);
    if (t.has_secret_fields()) {
        throw ValidationError(
            "input contains secret fields; the attack reads only g, A and B");
    }
    validate(t);
    if (!t.p || !t.w) {
        throw ValidationError("transcript is missing p/w");
    }
    const RingParams ring(*t.p, *t.w);
    Transcript transcript;
    transcript.generator = SymbolString::from_bytes(require_field(t.generator, "g"));
    transcript.alice_public = SymbolString::from_bytes(require_field(t.public_a, "A"));
    transcript.bob_public = SymbolString::from_bytes(require_field(t.public_b, "B"));

    const SymbolString recovered = recover_from_transcript(ring, transcript);
    t.recovered = recovered.to_bytes();
    store_transcript(out_path.empty() ? in_path : out_path, t);
    print_block(std::cout, "eve recovered", recovered);
    return 0;
}

int cmd_serve(const CommonOpts& opts, const std::string& bind) {
    const ProtocolConfig cfg = opts.config();
    Rng rng = opts.rng();
    const Endpoint where = parse_endpoint(bind);
    Listener listener = Listener::bind_on(where);
    std::cout << "listening on " << where.host << ":" << listener.port() << std::endl;
    Socket conn = listener.accept_one();
    const WireResult result = run_responder(conn, cfg, rng, opts.secret_b_length);
    print_block(std::cout, "shared key", result.shared_key);
    std::cout << "peer confirm verified\n";
    return 0;
}

int cmd_connect(const CommonOpts& opts, const std::string& to) {
    const ProtocolConfig cfg = opts.config();
    Rng rng = opts.rng();
    Socket conn = Socket::connect_to(parse_endpoint(to));
    const WireResult result = run_initiator(conn, cfg, rng, opts.secret_a_length);
    print_block(std::cout, "shared key", result.shared_key);
    std::cout << "peer confirm verified\n";
    return 0;
}

int cmd_tap(const std::string& bind, const std::string& to) {
    const Endpoint where = parse_endpoint(bind);
    Listener listener = Listener::bind_on(where);
    std::cout << "listening on " << where.host << ":" << listener.port() << std::endl;
    Socket client = listener.accept_one();
    Socket upstream = Socket::connect_to(parse_endpoint(to));
    const TapReport report = run_tap(client, upstream);
    std::cout << format_report(report);
    if (report.attack_error) {
        return kExitInfeasible;
    }
    if (!report.capture_complete() || !report.recovered_key || !report.verified()) {
        return kExitMismatch;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"string key exchange lab: broken-by-design key agreement, "
                 "its eavesdropper, and a framed TCP demo"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string in_path, out_path, secrets_path, party = "alice", bind, to;

    CLI::App* demo = app.add_subcommand("demo", "run a full exchange plus the attack");
    add_param_flags(demo, opts);
    demo->add_option("--out", out_path, "also write the run as a transcript file");

    CLI::App* keygen = app.add_subcommand(
        "keygen", "generate parameters, the public string and both secrets");
    add_param_flags(keygen, opts);
    keygen->add_option("--out", out_path, "public transcript file")->required();
    keygen->add_option("--secrets", secrets_path, "secrets file")->required();

    CLI::App* pub = app.add_subcommand("pub", "derive and record a public key");
    pub->add_option("--in", in_path, "public transcript file")->required();
    pub->add_option("--secrets", secrets_path, "secrets file")->required();
    pub->add_option("--party", party, "alice | bob")
        ->check(CLI::IsMember({"alice", "bob"}));
    pub->add_option("--out", out_path, "output path (default: --in)");

    CLI::App* shared = app.add_subcommand("shared", "derive and record a shared key");
    shared->add_option("--in", in_path, "public transcript file")->required();
    shared->add_option("--secrets", secrets_path, "secrets file")->required();
    shared->add_option("--party", party, "alice | bob")
        ->check(CLI::IsMember({"alice", "bob"}));
    shared->add_option("--out", out_path, "output path (default: --secrets)");

    CLI::App* attack = app.add_subcommand(
        "attack", "recover the shared key from public fields only");
    attack->add_option("--in", in_path, "public transcript file")->required();
    attack->add_option("--out", out_path, "output path (default: --in)");

    CLI::App* serve = app.add_subcommand("serve", "answer one exchange over TCP");
    add_param_flags(serve, opts);
    serve->add_option("--bind", bind, "host:port (port 0 picks one)")->required();

    CLI::App* connect = app.add_subcommand("connect", "initiate one exchange over TCP");
    add_param_flags(connect, opts);
    connect->add_option("--to", to, "host:port of the responder")->required();

    CLI::App* tap = app.add_subcommand("tap", "relay one session and eavesdrop on it");
    tap->add_option("--bind", bind, "host:port to accept the initiator on")->required();
    tap->add_option("--to", to, "host:port of the responder")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (demo->parsed()) return cmd_demo(opts, out_path);
        if (keygen->parsed()) return cmd_keygen(opts, out_path, secrets_path);
        if (pub->parsed()) return cmd_pub(in_path, secrets_path, party, out_path);
        if (shared->parsed()) return cmd_shared(in_path, secrets_path, party, out_path);
        if (attack->parsed()) return cmd_attack(in_path, out_path);
        if (serve->parsed()) return cmd_serve(opts, bind);
        if (connect->parsed()) return cmd_connect(opts, to);
        if (tap->parsed()) return cmd_tap(bind, to);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const AttackInfeasibleError& e) {
        std::cerr << "attack infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ProtocolError& e) {
        std::cerr << "protocol failure: " << e.what() << "\n";
        return kExitMismatch;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
