#include "erasure/types.hpp"

#include "erasure/error.hpp"

namespace erasure {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyKey: return "EmptyKey";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::ChannelClosed: return "ChannelClosed";
    case ErrorCode::ProtocolDesync: return "ProtocolDesync";
    case ErrorCode::DegenerateFraction: return "DegenerateFraction";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::NoData: return "NoData";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(ProtocolId id) {
  switch (id) {
    case ProtocolId::PT: return "pt";
    case ProtocolId::KL: return "kl";
    case ProtocolId::DKW: return "dkw";
    case ProtocolId::KK: return "kk";
    case ProtocolId::POSE_R: return "pose-r";
    case ProtocolId::POSE_G: return "pose-g";
    case ProtocolId::POSE_L: return "pose-l";
  }
  return "?";
}

std::string_view to_string(HashId id) {
  switch (id) {
    case HashId::ASCON: return "ascon";
    case HashId::BLAKE2: return "blake2";
    case HashId::BLAKE3: return "blake3";
    case HashId::SHA256: return "sha256";
    case HashId::AESHASH: return "aeshash";
  }
  return "?";
}

std::optional<ProtocolId> parse_protocol(std::string_view name) {
  for (ProtocolId id : kAllProtocols) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::optional<HashId> parse_hash(std::string_view name) {
  for (HashId id : kAllHashes) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw Error(ErrorCode::ParseError, "odd-length hex string");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]);
    const int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::ParseError, "invalid hex digit");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

}  // namespace erasure
