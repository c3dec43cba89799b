#include <doctest.h>

#include <fstream>
#include <set>
#include <string>

#include "erasure/digest.hpp"
#include "erasure/error.hpp"

using namespace erasure;

namespace {

struct Kat {
  Bytes input;
  std::string digest;
};

std::vector<Kat> load_kat(const std::string& name) {
  std::ifstream in(std::string(ERASURE_KAT_DIR) + "/" + name + ".txt");
  REQUIRE(in.good());
  std::vector<Kat> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    REQUIRE(colon != std::string::npos);
    out.push_back({from_hex(line.substr(0, colon)), line.substr(colon + 1)});
  }
  return out;
}

std::string hex_of(HashId id, std::string_view s) { return digest::hash(id, as_bytes(s)).hex(); }

}  // namespace

TEST_SUITE("digest") {
  TEST_CASE("generated vectors match for every hash") {
    const std::pair<HashId, const char*> files[] = {{HashId::SHA256, "sha256"},
                                                    {HashId::BLAKE2, "blake2"},
                                                    {HashId::BLAKE3, "blake3"},
                                                    {HashId::ASCON, "ascon"},
                                                    {HashId::AESHASH, "aeshash"}};
    for (const auto& [id, file] : files) {
      const auto kats = load_kat(file);
      CHECK(kats.size() >= 30);
      for (const auto& k : kats) {
        INFO(file, " len=", k.input.size());
        CHECK(digest::hash(id, k.input).hex() == k.digest);
      }
    }
  }

  TEST_CASE("sha256 published vectors") {
    CHECK(hex_of(HashId::SHA256, "") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(hex_of(HashId::SHA256, "abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(hex_of(HashId::SHA256, "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    const std::string million(1'000'000, 'a');
    CHECK(hex_of(HashId::SHA256, million) == "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
  }

  TEST_CASE("blake2s published vectors") {
    CHECK(hex_of(HashId::BLAKE2, "abc") == "508c5e8c327c14e2e1a72ba34eeb452f37458b209ed63a294d999b4c86675982");
    CHECK(hex_of(HashId::BLAKE2, "") == "69217a3079908094e11121d042354a7c1f55b6482ca1a51e1b250dfd1ed0eef9");
  }

  TEST_CASE("blake3 published vectors") {
    CHECK(hex_of(HashId::BLAKE3, "") == "af1349b9f5f9a1a6a0404dea36dcc9499bcb25c9adc112b7cc9a93cae41f3262");
    Bytes one{0};
    CHECK(digest::blake3_256(one).hex() == "2d3adedff11b61f14c886e35afa036736dcd87a74d27b5c1510225d0f592e213");
  }

  TEST_CASE("ascon-hash256 published vectors") {
    CHECK(digest::ascon_hash256({}).hex() == "0b3be5850f2f6b98caf29f8fdea89b64a1fa70aa249b8f839bd53baa304d92b2");
    Bytes zero{0};
    CHECK(digest::ascon_hash256(zero).hex() == "0728621035af3ed2bca03bf6fde900f9456f5330e4b5ee23e7f6a1e70291bc80");
  }

  TEST_CASE("aes-128 block cipher") {
    std::array<std::uint8_t, 16> key{}, pt{};
    for (int i = 0; i < 16; ++i) {
      key[i] = static_cast<std::uint8_t>(i);
      pt[i] = static_cast<std::uint8_t>(i * 0x11);
    }
    const auto ct = digest::aes128_encrypt(key, pt);
    CHECK(to_hex(ct) == "69c4e0d86a7b0430d8cdb78070b4c55a");
  }

  TEST_CASE("hmac-sha256 published vectors") {
    const Bytes k1(20, 0x0b);
    CHECK(digest::hmac(HashId::SHA256, k1, as_bytes("Hi There")).hex() ==
          "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7");
    CHECK(digest::hmac(HashId::SHA256, as_bytes("Jefe"), as_bytes("what do ya want for nothing?")).hex() ==
          "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
    const Bytes k6(131, 0xaa);
    CHECK(digest::hmac(HashId::SHA256, k6, as_bytes("Test Using Larger Than Block-Size Key - Hash Key First")).hex() ==
          "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54");
  }

  TEST_CASE("hmac over other hashes follows the padded construction") {
    const Bytes key = from_hex("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
    const Bytes msg(100, 0x5c);
    for (HashId id : kAllHashes) {
      Bytes ipad(64, 0x36), opad(64, 0x5c);
      for (std::size_t i = 0; i < key.size(); ++i) {
        ipad[i] ^= key[i];
        opad[i] ^= key[i];
      }
      Bytes inner = ipad;
      inner.insert(inner.end(), msg.begin(), msg.end());
      const auto ih = digest::hash(id, inner);
      Bytes outer = opad;
      outer.insert(outer.end(), ih.value.begin(), ih.value.end());
      CHECK(digest::hmac(id, key, msg) == digest::hash(id, outer));
    }
  }

  TEST_CASE("hmac rejects an empty key") {
    CHECK_THROWS_AS(digest::hmac(HashId::SHA256, {}, as_bytes("x")), Error);
    try {
      digest::hmac(HashId::BLAKE3, {}, as_bytes("x"));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyKey);
    }
  }

  TEST_CASE("expand is counter-mode and truncates") {
    const Bytes seed = from_hex("aabbcc");
    const Bytes out = digest::expand(HashId::SHA256, seed, 70);
    REQUIRE(out.size() == 70);
    for (std::uint64_t i = 0; i < 3; ++i) {
      Bytes in = seed;
      append_le64(in, i);
      const auto d = digest::sha256(in);
      const std::size_t n = std::min<std::size_t>(32, 70 - 32 * i);
      CHECK(std::equal(d.value.begin(), d.value.begin() + n, out.begin() + 32 * i));
    }
    CHECK(digest::expand(HashId::SHA256, seed, 0).empty());
  }

  TEST_CASE("hashes differ from each other and are deterministic") {
    std::set<std::string> seen;
    for (HashId id : kAllHashes) {
      CHECK(hex_of(id, "erase") == hex_of(id, "erase"));
      seen.insert(hex_of(id, "erase"));
    }
    CHECK(seen.size() == kAllHashes.size());
  }
}
