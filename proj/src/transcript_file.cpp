#include "skx/transcript_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "skx/errors.hpp"
#include "skx/hex.hpp"

namespace skx {
namespace {

constexpr std::string_view kKnownFields[] = {"p",  "w",  "K",  "digest", "g", "a",
                                             "b",  "A",  "B",  "sa",     "sb", "eve"};

bool known_field(std::string_view name) {
    for (std::string_view f : kKnownFields) {
        if (f == name) return true;
    }
    return false;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::uint32_t parse_u32(std::string_view name, std::string_view value) {
    value = trim(value);
    std::uint32_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
        throw ParseError("field '" + std::string(name) + "' is not an unsigned integer: '" +
                         std::string(value) + "'");
    }
    return out;
}

void check_length(std::string_view name, const std::optional<Bytes>& field,
                  std::uint32_t key_length) {
    if (field && field->size() != key_length) {
        throw ValidationError("field '" + std::string(name) + "' has length " +
                              std::to_string(field->size()) + ", declared K is " +
                              std::to_string(key_length));
    }
}

void check_range(std::string_view name, const std::optional<Bytes>& field, std::uint32_t p) {
    if (!field) return;
    for (std::size_t i = 0; i < field->size(); ++i) {
        if ((*field)[i] >= p) {
            throw ValidationError("field '" + std::string(name) + "' has symbol " +
                                  std::to_string((*field)[i]) + " at index " +
                                  std::to_string(i) + ", not below p = " + std::to_string(p));
        }
    }
}

}  // namespace

TranscriptFile TranscriptFile::parse(std::string_view text) {
    // First pass: group raw value text by label.
    std::map<std::string, std::string, std::less<>> raw;
    std::string current;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;

        const std::string_view stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        const std::size_t colon = stripped.find(':');
        const bool label_line =
            colon != std::string_view::npos &&
            colon > 0 &&
            stripped.substr(0, colon).find_first_not_of(
                "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ") ==
                std::string_view::npos;
        if (label_line) {
            const std::string_view name = stripped.substr(0, colon);
            if (!known_field(name)) {
                throw ParseError("unknown field '" + std::string(name) + "'");
            }
            if (raw.contains(name)) {
                throw ParseError("duplicate field '" + std::string(name) + "'");
            }
            current = std::string(name);
            raw[current] = std::string(stripped.substr(colon + 1));
        } else {
            if (current.empty()) {
                throw ParseError("content before any field label: '" +
                                 std::string(stripped) + "'");
            }
            raw[current].append(" ").append(stripped);
        }
    }

    TranscriptFile t;
    for (const auto& [name, value] : raw) {
        if (name == "p") {
            t.p = parse_u32(name, value);
        } else if (name == "w") {
            t.w = parse_u32(name, value);
        } else if (name == "K") {
            t.key_length = parse_u32(name, value);
        } else if (name == "digest") {
            const auto kind = digest_from_name(trim(value));
            if (!kind) {
                throw ParseError("unknown digest name '" + std::string(trim(value)) + "'");
            }
            t.digest = *kind;
        } else {
            Bytes decoded = from_hex(value);
            if (name == "g") t.generator = std::move(decoded);
            else if (name == "a") t.secret_a = std::move(decoded);
            else if (name == "b") t.secret_b = std::move(decoded);
            else if (name == "A") t.public_a = std::move(decoded);
            else if (name == "B") t.public_b = std::move(decoded);
            else if (name == "sa") t.shared_a = std::move(decoded);
            else if (name == "sb") t.shared_b = std::move(decoded);
            else if (name == "eve") t.recovered = std::move(decoded);
        }
    }
    return t;
}

std::string TranscriptFile::serialize() const {
    std::ostringstream out;
    const auto number = [&](std::string_view name, const std::optional<std::uint32_t>& v) {
        if (v) out << name << ": " << *v << "\n";
    };
    const auto bytes = [&](std::string_view name, const std::optional<Bytes>& v) {
        if (v) out << name << ":\n" << to_hex_wrapped(*v);
    };
    number("p", p);
    number("w", w);
    number("K", key_length);
    if (digest) {
        out << "digest: " << digest_name(*digest) << "\n";
    }
    bytes("g", generator);
    bytes("a", secret_a);
    bytes("b", secret_b);
    bytes("A", public_a);
    bytes("B", public_b);
    bytes("sa", shared_a);
    bytes("sb", shared_b);
    bytes("eve", recovered);
    return out.str();
}

bool TranscriptFile::has_secret_fields() const {
    return secret_a || secret_b || shared_a || shared_b;
}

ProtocolConfig TranscriptFile::config() const {
    if (!p || !w || !key_length || !digest) {
        throw ValidationError("transcript is missing one of p/w/K/digest");
    }
    return ProtocolConfig(RingParams(*p, *w), *digest, *key_length);
}

void validate(const TranscriptFile& t) {
    if (t.p || t.w) {
        if (!t.p || !t.w) {
            throw ValidationError("p and w must be declared together");
        }
        RingParams ring(*t.p, *t.w);  // throws on invalid values
        check_range("g", t.generator, ring.p);
        check_range("a", t.secret_a, ring.p);
        check_range("b", t.secret_b, ring.p);
        check_range("A", t.public_a, ring.p);
        check_range("B", t.public_b, ring.p);
        check_range("sa", t.shared_a, ring.p);
        check_range("sb", t.shared_b, ring.p);
        check_range("eve", t.recovered, ring.p);
    }
    if (t.key_length) {
        check_length("g", t.generator, *t.key_length);
        check_length("A", t.public_a, *t.key_length);
        check_length("B", t.public_b, *t.key_length);
        check_length("sa", t.shared_a, *t.key_length);
        check_length("sb", t.shared_b, *t.key_length);
        check_length("eve", t.recovered, *t.key_length);
    }
    const auto nonempty = [](std::string_view name, const std::optional<Bytes>& v) {
        if (v && v->empty()) {
            throw ValidationError("secret field '" + std::string(name) + "' is empty");
        }
    };
    nonempty("a", t.secret_a);
    nonempty("b", t.secret_b);
}

TranscriptFile load_transcript(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return TranscriptFile::parse(buf.str());
}

void store_transcript(const std::string& path, const TranscriptFile& t) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << t.serialize();
}

}  // namespace skx
