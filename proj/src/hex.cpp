#include "skx/hex.hpp"

#include <cctype>

#include "skx/errors.hpp"

namespace skx {
namespace {

constexpr char kDigits[] = "0123456789abcdef";

int nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

std::string to_hex_wrapped(std::span<const std::uint8_t> bytes, std::size_t width) {
    const std::string flat = to_hex(bytes);
    std::string out;
    out.reserve(flat.size() + flat.size() / (width ? width : 1) + 1);
    for (std::size_t i = 0; i < flat.size(); i += width) {
        out.append(flat, i, width);
        out.push_back('\n');
    }
    return out;
}

std::vector<std::uint8_t> from_hex(std::string_view text) {
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 2);
    int high = -1;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            continue;
        }
        const int v = nibble(c);
        if (v < 0) {
            throw ParseError(std::string("invalid hex character '") + c + "'");
        }
        if (high < 0) {
            high = v;
        } else {
            out.push_back(static_cast<std::uint8_t>((high << 4) | v));
            high = -1;
        }
    }
    if (high >= 0) {
        throw ParseError("odd number of hex digits");
    }
    return out;
}

}  // namespace skx
