// BLAKE3 in default hashing mode with a 32-byte output. Follows the structure
// of the portable reference implementation: chunk states feeding a stack of
// chaining values that is merged into parent nodes.

#include <array>
#include <bit>
#include <cstring>
#include <vector>

#include "erasure/digest.hpp"

namespace erasure::digest {
namespace {

constexpr std::size_t kBlockLen = 64;
constexpr std::size_t kChunkLen = 1024;

constexpr std::uint32_t kChunkStart = 1u << 0;
constexpr std::uint32_t kChunkEnd = 1u << 1;
constexpr std::uint32_t kParent = 1u << 2;
constexpr std::uint32_t kRoot = 1u << 3;

using Words8 = std::array<std::uint32_t, 8>;
using Words16 = std::array<std::uint32_t, 16>;

constexpr Words8 kIv = {0x6A09E667, 0xBB67AE85, 0x3C6EF372, 0xA54FF53A,
                        0x510E527F, 0x9B05688C, 0x1F83D9AB, 0x5BE0CD19};

constexpr std::array<std::size_t, 16> kPermutation = {2, 6,  3,  10, 7, 0,  4,  13,
                                                      1, 11, 12, 5,  9, 14, 15, 8};

void g(Words16& s, int a, int b, int c, int d, std::uint32_t mx, std::uint32_t my) {
  s[a] = s[a] + s[b] + mx;
  s[d] = std::rotr(s[d] ^ s[a], 16);
  s[c] = s[c] + s[d];
  s[b] = std::rotr(s[b] ^ s[c], 12);
  s[a] = s[a] + s[b] + my;
  s[d] = std::rotr(s[d] ^ s[a], 8);
  s[c] = s[c] + s[d];
  s[b] = std::rotr(s[b] ^ s[c], 7);
}

void round(Words16& s, const Words16& m) {
  g(s, 0, 4, 8, 12, m[0], m[1]);
  g(s, 1, 5, 9, 13, m[2], m[3]);
  g(s, 2, 6, 10, 14, m[4], m[5]);
  g(s, 3, 7, 11, 15, m[6], m[7]);
  g(s, 0, 5, 10, 15, m[8], m[9]);
  g(s, 1, 6, 11, 12, m[10], m[11]);
  g(s, 2, 7, 8, 13, m[12], m[13]);
  g(s, 3, 4, 9, 14, m[14], m[15]);
}

Words16 compress(const Words8& cv, Words16 block, std::uint64_t counter, std::uint32_t block_len,
                 std::uint32_t flags) {
  Words16 s = {cv[0],  cv[1],  cv[2],  cv[3],
               cv[4],  cv[5],  cv[6],  cv[7],
               kIv[0], kIv[1], kIv[2], kIv[3],
               static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32),
               block_len, flags};
  for (int r = 0; r < 7; ++r) {
    round(s, block);
    if (r == 6) break;
    Words16 permuted{};
    for (std::size_t i = 0; i < 16; ++i) permuted[i] = block[kPermutation[i]];
    block = permuted;
  }
  for (std::size_t i = 0; i < 8; ++i) {
    s[i] ^= s[i + 8];
    s[i + 8] ^= cv[i];
  }
  return s;
}

Words8 first8(const Words16& w) {
  Words8 out{};
  std::copy_n(w.begin(), 8, out.begin());
  return out;
}

Words16 words_from_block(const std::array<std::uint8_t, kBlockLen>& b) {
  Words16 w{};
  for (std::size_t i = 0; i < 16; ++i) {
    w[i] = std::uint32_t{b[4 * i]} | (std::uint32_t{b[4 * i + 1]} << 8) |
           (std::uint32_t{b[4 * i + 2]} << 16) | (std::uint32_t{b[4 * i + 3]} << 24);
  }
  return w;
}

struct Output {
  Words8 input_cv;
  Words16 block;
  std::uint64_t counter;
  std::uint32_t block_len;
  std::uint32_t flags;

  Words8 chaining_value() const { return first8(compress(input_cv, block, counter, block_len, flags)); }
  Words8 root() const { return first8(compress(input_cv, block, 0, block_len, flags | kRoot)); }
};

Output parent_output(const Words8& left, const Words8& right) {
  Words16 block{};
  std::copy(left.begin(), left.end(), block.begin());
  std::copy(right.begin(), right.end(), block.begin() + 8);
  return Output{kIv, block, 0, static_cast<std::uint32_t>(kBlockLen), kParent};
}

class ChunkState {
 public:
  explicit ChunkState(std::uint64_t counter) : cv_(kIv), counter_(counter) {}

  std::size_t len() const { return kBlockLen * blocks_compressed_ + block_len_; }
  std::uint64_t counter() const { return counter_; }

  void update(const std::uint8_t* in, std::size_t n) {
    while (n > 0) {
      if (block_len_ == kBlockLen) {
        cv_ = first8(compress(cv_, words_from_block(block_), counter_,
                              static_cast<std::uint32_t>(kBlockLen), start_flag()));
        ++blocks_compressed_;
        block_.fill(0);
        block_len_ = 0;
      }
      const std::size_t take = std::min(kBlockLen - block_len_, n);
      std::memcpy(block_.data() + block_len_, in, take);
      block_len_ += take;
      in += take;
      n -= take;
    }
  }

  Output output() const {
    return Output{cv_, words_from_block(block_), counter_, static_cast<std::uint32_t>(block_len_),
                  start_flag() | kChunkEnd};
  }

 private:
  std::uint32_t start_flag() const { return blocks_compressed_ == 0 ? kChunkStart : 0; }

  Words8 cv_;
  std::uint64_t counter_;
  std::array<std::uint8_t, kBlockLen> block_{};
  std::size_t block_len_ = 0;
  std::size_t blocks_compressed_ = 0;
};

}  // namespace

Digest256 blake3_256(ByteView data) {
  ChunkState chunk(0);
  std::vector<Words8> stack;

  const std::uint8_t* in = data.data();
  std::size_t n = data.size();
  while (n > 0) {
    if (chunk.len() == kChunkLen) {
      Words8 cv = chunk.output().chaining_value();
      std::uint64_t total = chunk.counter() + 1;
      while ((total & 1) == 0) {
        cv = parent_output(stack.back(), cv).chaining_value();
        stack.pop_back();
        total >>= 1;
      }
      stack.push_back(cv);
      chunk = ChunkState(chunk.counter() + 1);
    }
    const std::size_t take = std::min(kChunkLen - chunk.len(), n);
    chunk.update(in, take);
    in += take;
    n -= take;
  }

  Output out = chunk.output();
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    out = parent_output(*it, out.chaining_value());
  }
  const Words8 root = out.root();

  Digest256 d;
  for (std::size_t i = 0; i < 8; ++i) {
    for (int b = 0; b < 4; ++b) d.value[4 * i + b] = static_cast<std::uint8_t>(root[i] >> (8 * b));
  }
  return d;
}

}  // namespace erasure::digest
