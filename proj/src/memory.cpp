#include "erasure/memory.hpp"

#include <cstring>
#include <fstream>

#include "erasure/error.hpp"

namespace erasure {

MemoryModel::MemoryModel(std::size_t memory_bytes)
    : bytes_(memory_bytes), coverage_(memory_bytes, 0), snapshot_(memory_bytes),
      unwritten_(memory_bytes) {
  if (memory_bytes % kBlockBytes != 0) {
    throw Error(ErrorCode::InvalidConfig, "memory size must be a multiple of 32");
  }
}

void MemoryModel::attach(Endpoint& clock, std::uint64_t copy_ns_per_byte) {
  clock_ = &clock;
  copy_ns_per_byte_ = copy_ns_per_byte;
}

void MemoryModel::reset(const std::function<void(std::span<std::uint8_t>)>& fill) {
  fill(bytes_);
  snapshot_ = bytes_;
  std::fill(coverage_.begin(), coverage_.end(), 0);
  unwritten_ = bytes_.size();
  bytes_read_ = 0;
  full_coverage_at_.reset();
}

void MemoryModel::mark(std::size_t offset, std::size_t len) {
  for (std::size_t i = offset; i < offset + len; ++i) {
    if (!coverage_[i]) {
      coverage_[i] = 1;
      --unwritten_;
    }
  }
  if (clock_ != nullptr) clock_->charge(len * copy_ns_per_byte_);
  if (unwritten_ == 0 && !full_coverage_at_) {
    full_coverage_at_ = clock_ != nullptr ? clock_->now_ns() : 0;
  }
}

void MemoryModel::write_block(std::size_t index, ByteView data) {
  if (index >= blocks()) throw Error(ErrorCode::OutOfRange, "block index out of range");
  if (data.size() != kBlockBytes) throw Error(ErrorCode::OutOfRange, "block write must be 32 bytes");
  std::memcpy(bytes_.data() + index * kBlockBytes, data.data(), kBlockBytes);
  mark(index * kBlockBytes, kBlockBytes);
}

Digest256 MemoryModel::read_block(std::size_t index) const {
  if (index >= blocks()) throw Error(ErrorCode::OutOfRange, "block index out of range");
  Digest256 d;
  std::memcpy(d.value.data(), bytes_.data() + index * kBlockBytes, kBlockBytes);
  bytes_read_ += kBlockBytes;
  return d;
}

ByteView MemoryModel::read_range(std::size_t offset, std::size_t len) const {
  if (offset > bytes_.size() || len > bytes_.size() - offset) {
    throw Error(ErrorCode::OutOfRange, "read range out of bounds");
  }
  bytes_read_ += len;
  return ByteView(bytes_).subspan(offset, len);
}

void MemoryModel::corrupt_byte(std::size_t offset, std::uint8_t mask) {
  if (offset >= bytes_.size()) throw Error(ErrorCode::OutOfRange, "offset out of range");
  bytes_[offset] ^= mask;
  if (!coverage_[offset]) {
    coverage_[offset] = 1;
    --unwritten_;
  }
}

void MemoryModel::dump(const std::string& prefix) const {
  std::ofstream bin(prefix + ".bin", std::ios::binary);
  if (!bin) throw Error(ErrorCode::IoError, "cannot open " + prefix + ".bin");
  bin.write(reinterpret_cast<const char*>(bytes_.data()), static_cast<std::streamsize>(bytes_.size()));

  Bytes bitmap((coverage_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < coverage_.size(); ++i) {
    if (coverage_[i]) bitmap[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  }
  std::ofstream cov(prefix + ".coverage", std::ios::binary);
  if (!cov) throw Error(ErrorCode::IoError, "cannot open " + prefix + ".coverage");
  cov.write(reinterpret_cast<const char*>(bitmap.data()), static_cast<std::streamsize>(bitmap.size()));
}

}  // namespace erasure
