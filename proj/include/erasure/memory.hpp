#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "erasure/channel.hpp"
#include "erasure/digest.hpp"

namespace erasure {

/// Non-erasable prover state (nonce, loop counter, running digest) may not
/// exceed this many blocks.
inline constexpr std::size_t kMaxScratchBlocks = 3;

/// The prover's erasable array. Tracks per-byte write coverage since the last
/// reset and charges copy cost to the attached party clock on every write.
class MemoryModel {
 public:
  explicit MemoryModel(std::size_t memory_bytes);

  /// Subsequent writes charge `copy_ns_per_byte` per byte to `clock`; the
  /// clock also stamps the moment coverage first reaches 100%.
  void attach(Endpoint& clock, std::uint64_t copy_ns_per_byte);

  void reset(const std::function<void(std::span<std::uint8_t>)>& fill);

  void write_block(std::size_t index, ByteView data);
  void write_block(std::size_t index, const Digest256& d) { write_block(index, d.view()); }
  Digest256 read_block(std::size_t index) const;
  /// Counted read of an arbitrary byte range.
  ByteView read_range(std::size_t offset, std::size_t len) const;

  /// Flips bits of one byte in place (a tampering write).
  void corrupt_byte(std::size_t offset, std::uint8_t mask = 0xff);

  std::size_t size() const { return bytes_.size(); }
  std::size_t blocks() const { return bytes_.size() / kBlockBytes; }
  std::uint64_t unwritten_count() const { return unwritten_; }
  bool covered(std::size_t offset) const { return coverage_[offset] != 0; }
  ByteView contents() const { return bytes_; }
  const Bytes& initial_snapshot() const { return snapshot_; }
  std::uint64_t bytes_read() const { return bytes_read_; }
  std::optional<std::uint64_t> full_coverage_at() const { return full_coverage_at_; }

  /// Writes `<prefix>.bin` (raw contents) and `<prefix>.coverage` (bitmap,
  /// LSB-first, one bit per byte).
  void dump(const std::string& prefix) const;

 private:
  void mark(std::size_t offset, std::size_t len);

  Bytes bytes_;
  std::vector<std::uint8_t> coverage_;
  Bytes snapshot_;
  std::uint64_t unwritten_;
  mutable std::uint64_t bytes_read_ = 0;
  std::optional<std::uint64_t> full_coverage_at_;
  Endpoint* clock_ = nullptr;
  std::uint64_t copy_ns_per_byte_ = 0;
};

}  // namespace erasure
