#include <doctest.h>

#include <random>
#include <string>

#include "skx/errors.hpp"
#include "skx/hex.hpp"
#include "skx/transcript_file.hpp"

using namespace skx;

TEST_CASE("hex codec round trips arbitrary bytes") {
    std::mt19937 gen(73);
    for (int trial = 0; trial < 200; ++trial) {
        Bytes bytes(gen() % 300);
        for (auto& b : bytes) b = static_cast<std::uint8_t>(gen());
        REQUIRE(from_hex(to_hex(bytes)) == bytes);
        REQUIRE(from_hex(to_hex_wrapped(bytes)) == bytes);
    }
    CHECK(to_hex(Bytes{0x00, 0xff, 0x5a}) == "00ff5a");
    CHECK(from_hex("00FF5a") == Bytes{0x00, 0xff, 0x5a});  // case-insensitive input
}

namespace {

TranscriptFile sample() {
    TranscriptFile t;
    t.p = 256;
    t.w = 2;
    t.key_length = 3;
    t.digest = DigestKind::sha512;
    t.generator = Bytes{0x93, 0x44, 0x4f};
    t.public_a = Bytes{0x5e, 0x47, 0xa8};
    t.public_b = Bytes{0x64, 0xf5, 0xba};
    return t;
}

}  // namespace

TEST_CASE("serialize then parse is the identity") {
    TranscriptFile t = sample();
    t.secret_a = Bytes{1, 2, 3, 4};
    t.shared_a = Bytes{9, 9, 9};
    const TranscriptFile back = TranscriptFile::parse(t.serialize());
    CHECK(back.p == t.p);
    CHECK(back.w == t.w);
    CHECK(back.key_length == t.key_length);
    CHECK(back.digest == t.digest);
    CHECK(back.generator == t.generator);
    CHECK(back.public_a == t.public_a);
    CHECK(back.public_b == t.public_b);
    CHECK(back.secret_a == t.secret_a);
    CHECK(back.shared_a == t.shared_a);
    CHECK(!back.secret_b);
    CHECK(!back.recovered);
}

TEST_CASE("long values wrap at 64 hex characters") {
    TranscriptFile t;
    t.generator = Bytes(100, 0xab);  // 200 hex chars -> lines of 64, 64, 64, 8
    const std::string text = t.serialize();
    const std::size_t first_line = text.find('\n', text.find("g:")) + 1;
    const std::size_t second_line = text.find('\n', first_line);
    CHECK(second_line - first_line == 64);
    const TranscriptFile back = TranscriptFile::parse(text);
    CHECK(back.generator == t.generator);
}

TEST_CASE("hex input ignores whitespace and line breaks") {
    const TranscriptFile t = TranscriptFile::parse(
        "p: 256\n"
        "w: 2\n"
        "K: 4\n"
        "digest: sha256\n"
        "g:\n"
        "  93 44\n"
        "\t4f f1\n");
    CHECK(t.generator == Bytes{0x93, 0x44, 0x4f, 0xf1});
    CHECK(t.digest == DigestKind::sha256);
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(TranscriptFile::parse("g: 93 4"), ParseError);     // odd digits
    CHECK_THROWS_AS(TranscriptFile::parse("g: 93zz"), ParseError);     // not hex
    CHECK_THROWS_AS(TranscriptFile::parse("mystery: 1"), ParseError);  // unknown field
    CHECK_THROWS_AS(TranscriptFile::parse("p: 256\np: 8\n"), ParseError);
    CHECK_THROWS_AS(TranscriptFile::parse("9344\ng: 93\n"), ParseError);
    CHECK_THROWS_AS(TranscriptFile::parse("p: abc\n"), ParseError);
    CHECK_THROWS_AS(TranscriptFile::parse("digest: md5\n"), ParseError);
}

TEST_CASE("validate enforces the declared parameters") {
    CHECK_NOTHROW(validate(sample()));

    TranscriptFile odd_p = sample();
    odd_p.p = 255;
    CHECK_THROWS_AS(validate(odd_p), ValidationError);

    TranscriptFile missing_w = sample();
    missing_w.w.reset();
    CHECK_THROWS_AS(validate(missing_w), ValidationError);

    TranscriptFile short_key = sample();
    short_key.public_a = Bytes{1};
    CHECK_THROWS_AS(validate(short_key), ValidationError);

    TranscriptFile out_of_range = sample();
    out_of_range.p = 8;
    out_of_range.w = 2;
    CHECK_THROWS_AS(validate(out_of_range), ValidationError);  // 0x93 >= 8

    TranscriptFile empty_secret = sample();
    empty_secret.secret_a = Bytes{};
    CHECK_THROWS_AS(validate(empty_secret), ValidationError);
}

TEST_CASE("secret fields are recognized") {
    CHECK(!sample().has_secret_fields());
    TranscriptFile t = sample();
    t.secret_b = Bytes{1};
    CHECK(t.has_secret_fields());
    TranscriptFile u = sample();
    u.shared_b = Bytes{1, 2, 3};
    CHECK(u.has_secret_fields());
}

TEST_CASE("config assembly requires all four parameter fields") {
    CHECK_NOTHROW(sample().config());
    TranscriptFile t = sample();
    t.digest.reset();
    CHECK_THROWS_AS(t.config(), ValidationError);
    TranscriptFile u = sample();
    u.key_length.reset();
    CHECK_THROWS_AS(u.config(), ValidationError);
}
