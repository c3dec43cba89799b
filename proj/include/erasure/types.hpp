#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace erasure {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Block size of the erasable memory and of every label: one 256-bit digest.
inline constexpr std::size_t kBlockBytes = 32;

enum class ProtocolId : std::uint8_t { PT, KL, DKW, KK, POSE_R, POSE_G, POSE_L };
enum class HashId : std::uint8_t { ASCON, BLAKE2, BLAKE3, SHA256, AESHASH };

inline constexpr std::array<ProtocolId, 7> kAllProtocols = {
    ProtocolId::PT,     ProtocolId::KL,     ProtocolId::DKW,   ProtocolId::KK,
    ProtocolId::POSE_R, ProtocolId::POSE_G, ProtocolId::POSE_L};

inline constexpr std::array<HashId, 5> kAllHashes = {
    HashId::ASCON, HashId::BLAKE2, HashId::BLAKE3, HashId::SHA256, HashId::AESHASH};

std::string_view to_string(ProtocolId id);
std::string_view to_string(HashId id);
std::optional<ProtocolId> parse_protocol(std::string_view name);
std::optional<HashId> parse_hash(std::string_view name);

/// PoSE family: distance-bounded, no isolation assumption, `rounds_r` applies.
constexpr bool is_distance_bounded(ProtocolId id) {
  return id == ProtocolId::POSE_R || id == ProtocolId::POSE_G || id == ProtocolId::POSE_L;
}

/// Protocols that send the whole memory image over the channel.
constexpr bool streams_memory(ProtocolId id) {
  return id == ProtocolId::PT || id == ProtocolId::KL || id == ProtocolId::POSE_R;
}

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline void append_le64(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint64_t load_le64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

inline void append(Bytes& out, ByteView data) { out.insert(out.end(), data.begin(), data.end()); }

}  // namespace erasure
