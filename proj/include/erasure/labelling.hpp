#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "erasure/digest.hpp"
#include "erasure/memory.hpp"

namespace erasure {

/// Counting hash front-end. The meter is told the input length of every call
/// so the owner can charge virtual time for it.
class Hasher {
 public:
  using Meter = std::function<void(std::size_t input_len)>;

  explicit Hasher(HashId id, Meter meter = {}) : id_(id), meter_(std::move(meter)) {}

  HashId id() const { return id_; }
  Digest256 operator()(ByteView input);
  /// Counts as two calls (inner and outer).
  Digest256 hmac(ByteView key, ByteView message);

  std::uint64_t calls() const { return calls_; }
  std::uint64_t bytes_hashed() const { return bytes_; }

 private:
  void account(std::size_t len);

  HashId id_;
  Meter meter_;
  std::uint64_t calls_ = 0;
  std::uint64_t bytes_ = 0;
};

/// Where labels live while they are computed. Reads and writes are by block
/// index.
class LabelStore {
 public:
  virtual ~LabelStore() = default;
  virtual std::size_t size() const = 0;
  virtual Digest256 read(std::size_t i) = 0;
  virtual void write(std::size_t i, const Digest256& d) = 0;
};

class VectorStore final : public LabelStore {
 public:
  explicit VectorStore(std::size_t n) : labels_(n) {}
  std::size_t size() const override { return labels_.size(); }
  Digest256 read(std::size_t i) override { return labels_.at(i); }
  void write(std::size_t i, const Digest256& d) override { labels_.at(i) = d; }
  const std::vector<Digest256>& labels() const { return labels_; }

 private:
  std::vector<Digest256> labels_;
};

class MemoryStore final : public LabelStore {
 public:
  explicit MemoryStore(MemoryModel& memory) : memory_(memory) {}
  std::size_t size() const override { return memory_.blocks(); }
  Digest256 read(std::size_t i) override { return memory_.read_block(i); }
  void write(std::size_t i, const Digest256& d) override { memory_.write_block(i, d); }

 private:
  MemoryModel& memory_;
};

enum class LabellingKind { FULL_DEPENDENCY, STACKED_BITREVERSAL, CHAIN };

/// Reverses the low `bits` bits of `i`.
constexpr std::uint64_t bit_reverse(std::uint64_t i, unsigned bits) {
  std::uint64_t r = 0;
  for (unsigned b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
  return r;
}

/// ceil(log2 n) for n >= 1.
unsigned ceil_log2(std::uint64_t n);

// Each construction writes labels 0..n-1 of its final layer into `store`
// (whose size must be at least n). All integers in hash inputs are le64.

/// label_i = H(nonce || i || label_0 || ... || label_{i-1}); returns
/// H(label_0 || ... || label_{n-1}).
Digest256 full_dependency_labels(Hasher& h, const Digest256& nonce, std::size_t n, LabelStore& store);

/// Layer 0 is the chain; layer t in [1, layers] updates the buffer in place,
/// ascending i: x[i] = H(nonce || t || i || x[i] || x[rev(i)]). Returns H of the
/// final buffer. Throws NotPowerOfTwo unless n is a power of two >= 2.
Digest256 stacked_bitreversal_labels(Hasher& h, const Digest256& nonce, std::size_t n,
                                     unsigned layers, LabelStore& store);

/// label_0 = H(nonce || 0); label_i = H(nonce || i || label_{i-1}). Returns
/// label_{n-1}.
Digest256 chain_labels(Hasher& h, const Digest256& nonce, std::size_t n, LabelStore& store);

/// Runs the construction from scratch into a private buffer.
Digest256 recompute_label(LabellingKind kind, HashId h, const Digest256& nonce, std::size_t n,
                          unsigned layers, std::size_t index);

}  // namespace erasure
