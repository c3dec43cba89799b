#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "erasure/types.hpp"

namespace erasure {

struct Digest256 {
  std::array<std::uint8_t, 32> value{};

  ByteView view() const { return value; }
  std::string hex() const { return to_hex(value); }

  friend bool operator==(const Digest256&, const Digest256&) = default;
  friend auto operator<=>(const Digest256&, const Digest256&) = default;
};

namespace digest {

/// HMAC pads keys to this block size for every hash function, sponge included.
inline constexpr std::size_t kHmacBlockBytes = 64;

/// One-shot 256-bit hash: ASCON-Hash256, BLAKE2s-256, BLAKE3-256, SHA-256, or
/// the AES-128 double-pipe Davies-Meyer construction.
Digest256 hash(HashId id, ByteView data);

/// Standard HMAC over `hash(id, .)`. Throws Error{EmptyKey} on an empty key.
Digest256 hmac(HashId id, ByteView key, ByteView data);

/// Counter-mode stream: hash(id, seed || le64(0)) || hash(id, seed || le64(1)) ...
/// truncated to `out_len` bytes.
Bytes expand(HashId id, ByteView seed, std::size_t out_len);

// Individual primitives, exposed for known-answer testing.
Digest256 sha256(ByteView data);
Digest256 blake2s256(ByteView data);
Digest256 blake3_256(ByteView data);
Digest256 ascon_hash256(ByteView data);
Digest256 aeshash256(ByteView data);

/// Raw AES-128 block encryption (FIPS-197), used by aeshash256.
std::array<std::uint8_t, 16> aes128_encrypt(const std::array<std::uint8_t, 16>& key,
                                            const std::array<std::uint8_t, 16>& block);

}  // namespace digest
}  // namespace erasure
