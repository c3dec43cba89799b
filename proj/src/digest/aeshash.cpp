// AES-128 (FIPS-197) and the AESHASH construction built on it.
//
// AESHASH: Merkle-Damgard over 16-byte message blocks with a Davies-Meyer
// compression function, H' = AES-128_{m}(H) xor H. Padding is 0x80, zeros up
// to 8 mod 16, then the 64-bit big-endian bit length. Two chains run over the
// same padded message from distinct IVs and their final states are
// concatenated into 32 bytes. No security claim is made for this function.

#include <array>
#include <cstring>

#include "erasure/digest.hpp"

namespace erasure::digest {
namespace {

using Block = std::array<std::uint8_t, 16>;

constexpr std::uint8_t xtime(std::uint8_t x) {
  return static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) ? 0x1b : 0x00));
}

constexpr std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) {
  std::uint8_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a = xtime(a);
    b >>= 1;
  }
  return r;
}

constexpr std::array<std::uint8_t, 256> make_sbox() {
  std::array<std::uint8_t, 256> sbox{};
  for (int x = 0; x < 256; ++x) {
    std::uint8_t inv = 0;
    if (x != 0) {
      for (int y = 1; y < 256; ++y) {
        if (gf_mul(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)) == 1) {
          inv = static_cast<std::uint8_t>(y);
          break;
        }
      }
    }
    std::uint8_t s = inv;
    for (int k = 1; k <= 4; ++k) {
      s ^= static_cast<std::uint8_t>((inv << k) | (inv >> (8 - k)));
    }
    sbox[x] = static_cast<std::uint8_t>(s ^ 0x63);
  }
  return sbox;
}

constexpr std::array<std::uint8_t, 256> kSbox = make_sbox();

std::array<Block, 11> expand_key(const Block& key) {
  std::array<Block, 11> rk{};
  rk[0] = key;
  std::uint8_t rcon = 0x01;
  for (int r = 1; r <= 10; ++r) {
    const Block& prev = rk[r - 1];
    Block& cur = rk[r];
    std::array<std::uint8_t, 4> t = {kSbox[prev[13]], kSbox[prev[14]], kSbox[prev[15]],
                                     kSbox[prev[12]]};
    t[0] ^= rcon;
    rcon = xtime(rcon);
    for (int i = 0; i < 4; ++i) cur[i] = prev[i] ^ t[i];
    for (int i = 4; i < 16; ++i) cur[i] = prev[i] ^ cur[i - 4];
  }
  return rk;
}

void add_round_key(Block& s, const Block& k) {
  for (int i = 0; i < 16; ++i) s[i] ^= k[i];
}

void sub_shift(Block& s) {
  // State is column-major: byte (row r, column c) lives at s[4c + r].
  Block t{};
  for (int c = 0; c < 4; ++c) {
    for (int r = 0; r < 4; ++r) t[4 * c + r] = kSbox[s[4 * ((c + r) % 4) + r]];
  }
  s = t;
}

void mix_columns(Block& s) {
  for (int c = 0; c < 4; ++c) {
    std::uint8_t* col = &s[4 * c];
    const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
    col[0] = static_cast<std::uint8_t>(xtime(a0) ^ (xtime(a1) ^ a1) ^ a2 ^ a3);
    col[1] = static_cast<std::uint8_t>(a0 ^ xtime(a1) ^ (xtime(a2) ^ a2) ^ a3);
    col[2] = static_cast<std::uint8_t>(a0 ^ a1 ^ xtime(a2) ^ (xtime(a3) ^ a3));
    col[3] = static_cast<std::uint8_t>((xtime(a0) ^ a0) ^ a1 ^ a2 ^ xtime(a3));
  }
}

void davies_meyer(Block& chain, const Block& message_block) {
  const Block out = aes128_encrypt(message_block, chain);
  for (int i = 0; i < 16; ++i) chain[i] ^= out[i];
}

}  // namespace

std::array<std::uint8_t, 16> aes128_encrypt(const std::array<std::uint8_t, 16>& key,
                                            const std::array<std::uint8_t, 16>& block) {
  const auto rk = expand_key(key);
  Block s = block;
  add_round_key(s, rk[0]);
  for (int r = 1; r < 10; ++r) {
    sub_shift(s);
    mix_columns(s);
    add_round_key(s, rk[r]);
  }
  sub_shift(s);
  add_round_key(s, rk[10]);
  return s;
}

Digest256 aeshash256(ByteView data) {
  Bytes padded(data.begin(), data.end());
  padded.push_back(0x80);
  while (padded.size() % 16 != 8) padded.push_back(0x00);
  const std::uint64_t bits = static_cast<std::uint64_t>(data.size()) * 8;
  for (int i = 7; i >= 0; --i) padded.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));

  Block left{};
  Block right{};
  for (int i = 0; i < 16; ++i) {
    left[i] = static_cast<std::uint8_t>(i);
    right[i] = static_cast<std::uint8_t>(0xf0 + i);
  }
  for (std::size_t off = 0; off < padded.size(); off += 16) {
    Block m;
    std::memcpy(m.data(), padded.data() + off, 16);
    davies_meyer(left, m);
    davies_meyer(right, m);
  }

  Digest256 out;
  std::memcpy(out.value.data(), left.data(), 16);
  std::memcpy(out.value.data() + 16, right.data(), 16);
  return out;
}

}  // namespace erasure::digest
