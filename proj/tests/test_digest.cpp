#include <doctest.h>

#include <random>
#include <string_view>

#include "skx/digest.hpp"
#include "skx/errors.hpp"
#include "skx/hex.hpp"

using namespace skx;

namespace {

Bytes bytes_of(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

}  // namespace

TEST_CASE("sha512 known-answer vectors") {
    const Digest& d = digest_for(DigestKind::sha512);
    CHECK(d.length() == 64);
    CHECK(to_hex(d.compute(Bytes{})) ==
          "cf83e1357eefb8bdf1542850d66d8007d620e4050b5715dc83f4a921d36ce9ce"
          "47d0d13c5d85f2b0ff8318d2877eec2f63b931bd47417a81a538327af927da3e");
    CHECK(to_hex(d.compute(bytes_of("abc"))) ==
          "ddaf35a193617abacc417349ae20413112e6fa4e89a97ea20a9eeee64b55d39a"
          "2192992a274fc1a836ba3c23a3feebbd454d4423643ce80e2a9ac94fa54ca49f");
}

TEST_CASE("sha256 known-answer vectors") {
    const Digest& d = digest_for(DigestKind::sha256);
    CHECK(d.length() == 32);
    CHECK(to_hex(d.compute(Bytes{})) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(to_hex(d.compute(bytes_of("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("stub digest sums bytes plus one") {
    const Digest& d = digest_for(DigestKind::stub_sum);
    CHECK(d.length() == 1);
    CHECK(d.compute(Bytes{2}) == Bytes{3});
    CHECK(d.compute(Bytes{}) == Bytes{1});
    CHECK(d.compute(Bytes{255, 1}) == Bytes{1});  // wraps mod 256
}

TEST_CASE("digest names and wire ids") {
    CHECK(digest_name(DigestKind::sha512) == "sha512");
    CHECK(digest_from_name("sha256") == DigestKind::sha256);
    CHECK(digest_from_name("stub") == DigestKind::stub_sum);
    CHECK(!digest_from_name("md5").has_value());
    CHECK(digest_from_id(1) == DigestKind::sha512);
    CHECK(digest_from_id(3) == DigestKind::stub_sum);
    CHECK(!digest_from_id(9).has_value());
}

TEST_CASE("hash chain: first step hashes the seed, later steps the digest") {
    const Digest& d = digest_for(DigestKind::sha512);
    const Bytes seed = bytes_of("a seed of arbitrary length");
    HashChain chain(d, seed);
    CHECK(chain.step() == 1);
    CHECK(chain.current() == d.compute(seed));

    chain.advance();
    CHECK(chain.step() == 2);
    CHECK(chain.current() == d.compute(d.compute(seed)));
}

TEST_CASE("hash chain with the stub digest") {
    const Digest& d = digest_for(DigestKind::stub_sum);
    HashChain chain(d, Bytes{2});
    CHECK(chain.current() == Bytes{3});
    chain.advance();
    CHECK(chain.current() == Bytes{4});
}

TEST_CASE("advancing two copies of a state gives identical results") {
    const Digest& d = digest_for(DigestKind::sha512);
    HashChain chain(d, bytes_of("seed"));
    HashChain copy = chain;
    chain.advance();
    copy.advance();
    CHECK(chain.current() == copy.current());
    CHECK(chain.step() == copy.step());
}

TEST_CASE("chain determinism and length invariant over many steps") {
    for (DigestKind kind : {DigestKind::sha512, DigestKind::sha256, DigestKind::stub_sum}) {
        const Digest& d = digest_for(kind);
        HashChain first(d, bytes_of("determinism"));
        HashChain second(d, bytes_of("determinism"));
        for (int i = 0; i < 50; ++i) {
            REQUIRE(first.current().size() == d.length());
            REQUIRE(first.current() == second.current());
            first.advance();
            second.advance();
        }
    }
}

TEST_CASE("empty seed is legal") {
    const Digest& d = digest_for(DigestKind::sha512);
    HashChain chain(d, Bytes{});
    CHECK(to_hex(chain.current()).substr(0, 16) == "cf83e1357eefb8bd");
}

TEST_CASE("flipping one seed bit changes the first digest") {
    std::mt19937 gen(23);
    for (DigestKind kind : {DigestKind::sha512, DigestKind::sha256, DigestKind::stub_sum}) {
        const Digest& d = digest_for(kind);
        for (int trial = 0; trial < 20; ++trial) {
            Bytes seed(1 + gen() % 64);
            for (auto& b : seed) b = static_cast<std::uint8_t>(gen());
            Bytes flipped = seed;
            flipped[gen() % flipped.size()] ^= static_cast<std::uint8_t>(1u << (gen() % 8));
            REQUIRE(d.compute(seed) != d.compute(flipped));
        }
    }
}

TEST_CASE("digest bytes map to symbols") {
    const RingParams full(256, 2);
    const Bytes digest{0x93, 0x44};
    CHECK(to_symbols(digest, full) == SymbolString{147, 68});

    const RingParams tiny(8, 2);
    CHECK(to_symbols(Bytes{0x93}, tiny) == SymbolString{3});

    CHECK_THROWS_AS(to_symbols(digest, RingParams(512, 2)), ValidationError);
}
