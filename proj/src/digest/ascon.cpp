// Ascon-Hash256 (NIST SP 800-232): little-endian lanes, 64-bit rate, Ascon-p[12].

#include <array>
#include <bit>

#include "erasure/digest.hpp"

namespace erasure::digest {
namespace {

using State = std::array<std::uint64_t, 5>;

constexpr std::uint64_t kHashIv = 0x0000080100cc0002ULL;
constexpr std::size_t kRate = 8;

void permute12(State& s) {
  auto& [x0, x1, x2, x3, x4] = s;
  for (std::uint64_t c = 0xf0; c >= 0x4b; c -= 0x0f) {
    x2 ^= c;

    x0 ^= x4;
    x4 ^= x3;
    x2 ^= x1;
    const std::uint64_t t0 = ~x0 & x1;
    const std::uint64_t t1 = ~x1 & x2;
    const std::uint64_t t2 = ~x2 & x3;
    const std::uint64_t t3 = ~x3 & x4;
    const std::uint64_t t4 = ~x4 & x0;
    x0 ^= t1;
    x1 ^= t2;
    x2 ^= t3;
    x3 ^= t4;
    x4 ^= t0;
    x1 ^= x0;
    x0 ^= x4;
    x3 ^= x2;
    x2 = ~x2;

    x0 ^= std::rotr(x0, 19) ^ std::rotr(x0, 28);
    x1 ^= std::rotr(x1, 61) ^ std::rotr(x1, 39);
    x2 ^= std::rotr(x2, 1) ^ std::rotr(x2, 6);
    x3 ^= std::rotr(x3, 10) ^ std::rotr(x3, 17);
    x4 ^= std::rotr(x4, 7) ^ std::rotr(x4, 41);
  }
}

std::uint64_t load_partial(const std::uint8_t* p, std::size_t n) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return v;
}

State initial_state() {
  State s = {kHashIv, 0, 0, 0, 0};
  permute12(s);
  return s;
}

}  // namespace

Digest256 ascon_hash256(ByteView data) {
  static const State kInit = initial_state();
  State s = kInit;

  std::size_t off = 0;
  while (data.size() - off >= kRate) {
    s[0] ^= load_partial(data.data() + off, kRate);
    permute12(s);
    off += kRate;
  }
  const std::size_t rem = data.size() - off;
  s[0] ^= load_partial(data.data() + off, rem);
  s[0] ^= std::uint64_t{0x01} << (8 * rem);
  permute12(s);

  Digest256 out;
  for (std::size_t blk = 0; blk < 4; ++blk) {
    for (std::size_t i = 0; i < 8; ++i) out.value[8 * blk + i] = static_cast<std::uint8_t>(s[0] >> (8 * i));
    if (blk + 1 < 4) permute12(s);
  }
  return out;
}

}  // namespace erasure::digest
