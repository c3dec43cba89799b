#include "erasure/digest.hpp"

#include <array>

#include "erasure/error.hpp"

namespace erasure::digest {

Digest256 hash(HashId id, ByteView data) {
  switch (id) {
    case HashId::ASCON: return ascon_hash256(data);
    case HashId::BLAKE2: return blake2s256(data);
    case HashId::BLAKE3: return blake3_256(data);
    case HashId::SHA256: return sha256(data);
    case HashId::AESHASH: return aeshash256(data);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown hash id");
}

Digest256 hmac(HashId id, ByteView key, ByteView data) {
  if (key.empty()) throw Error(ErrorCode::EmptyKey, "hmac key must not be empty");

  std::array<std::uint8_t, kHmacBlockBytes> k{};
  if (key.size() > kHmacBlockBytes) {
    const Digest256 kh = hash(id, key);
    std::copy(kh.value.begin(), kh.value.end(), k.begin());
  } else {
    std::copy(key.begin(), key.end(), k.begin());
  }

  Bytes inner;
  inner.reserve(kHmacBlockBytes + data.size());
  for (auto b : k) inner.push_back(b ^ 0x36);
  append(inner, data);
  const Digest256 ih = hash(id, inner);

  Bytes outer;
  outer.reserve(kHmacBlockBytes + ih.value.size());
  for (auto b : k) outer.push_back(b ^ 0x5c);
  append(outer, ih.view());
  return hash(id, outer);
}

Bytes expand(HashId id, ByteView seed, std::size_t out_len) {
  Bytes out;
  out.reserve(out_len + 32);
  Bytes input(seed.begin(), seed.end());
  const std::size_t counter_at = input.size();
  input.resize(counter_at + 8);
  for (std::uint64_t counter = 0; out.size() < out_len; ++counter) {
    for (int i = 0; i < 8; ++i) input[counter_at + i] = static_cast<std::uint8_t>(counter >> (8 * i));
    const Digest256 d = hash(id, input);
    append(out, d.view());
  }
  out.resize(out_len);
  return out;
}

}  // namespace erasure::digest
