#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skx {

// Lowercase continuous hex.
std::string to_hex(std::span<const std::uint8_t> bytes);

// Same, broken into lines of `width` hex characters.
std::string to_hex_wrapped(std::span<const std::uint8_t> bytes, std::size_t width = 64);

// Decodes hex, ignoring any interspersed whitespace. Throws ParseError on
// odd digit counts or non-hex characters.
std::vector<std::uint8_t> from_hex(std::string_view text);

}  // namespace skx
