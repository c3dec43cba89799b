#include "erasure/labelling.hpp"

#include <bit>

#include "erasure/error.hpp"

namespace erasure {

void Hasher::account(std::size_t len) {
  ++calls_;
  bytes_ += len;
  if (meter_) meter_(len);
}

Digest256 Hasher::operator()(ByteView input) {
  account(input.size());
  return digest::hash(id_, input);
}

Digest256 Hasher::hmac(ByteView key, ByteView message) {
  account(digest::kHmacBlockBytes + message.size());
  account(digest::kHmacBlockBytes + kBlockBytes);
  return digest::hmac(id_, key, message);
}

unsigned ceil_log2(std::uint64_t n) {
  if (n <= 1) return 0;
  return static_cast<unsigned>(std::bit_width(n - 1));
}

namespace {

void check_store(std::size_t n, const LabelStore& store) {
  if (n == 0) throw Error(ErrorCode::InvalidConfig, "label count must be positive");
  if (store.size() < n) throw Error(ErrorCode::OutOfRange, "label store too small");
}

Bytes prefix(const Digest256& nonce, std::initializer_list<std::uint64_t> ints) {
  Bytes in(nonce.value.begin(), nonce.value.end());
  for (auto v : ints) append_le64(in, v);
  return in;
}

Digest256 digest_of(Hasher& h, LabelStore& store, std::size_t n) {
  Bytes all;
  all.reserve(n * kBlockBytes);
  for (std::size_t i = 0; i < n; ++i) append(all, store.read(i).view());
  return h(all);
}

}  // namespace

Digest256 full_dependency_labels(Hasher& h, const Digest256& nonce, std::size_t n, LabelStore& store) {
  check_store(n, store);
  for (std::size_t i = 0; i < n; ++i) {
    Bytes in = prefix(nonce, {i});
    in.reserve(in.size() + i * kBlockBytes);
    for (std::size_t j = 0; j < i; ++j) append(in, store.read(j).view());
    store.write(i, h(in));
  }
  return digest_of(h, store, n);
}

Digest256 chain_labels(Hasher& h, const Digest256& nonce, std::size_t n, LabelStore& store) {
  check_store(n, store);
  Digest256 prev = h(prefix(nonce, {0}));
  store.write(0, prev);
  for (std::size_t i = 1; i < n; ++i) {
    Bytes in = prefix(nonce, {i});
    append(in, prev.view());
    prev = h(in);
    store.write(i, prev);
  }
  return prev;
}

Digest256 stacked_bitreversal_labels(Hasher& h, const Digest256& nonce, std::size_t n,
                                     unsigned layers, LabelStore& store) {
  if (n < 2 || !std::has_single_bit(n)) {
    throw Error(ErrorCode::NotPowerOfTwo, "block count " + std::to_string(n) + " is not a power of two >= 2");
  }
  if (layers < 1) throw Error(ErrorCode::InvalidConfig, "layer count must be at least 1");
  chain_labels(h, nonce, n, store);
  const unsigned bits = ceil_log2(n);
  for (std::uint64_t t = 1; t <= layers; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      Bytes in = prefix(nonce, {t, i});
      append(in, store.read(i).view());
      append(in, store.read(bit_reverse(i, bits)).view());
      store.write(i, h(in));
    }
  }
  return digest_of(h, store, n);
}

Digest256 recompute_label(LabellingKind kind, HashId id, const Digest256& nonce, std::size_t n,
                          unsigned layers, std::size_t index) {
  if (index >= n) throw Error(ErrorCode::OutOfRange, "label index out of range");
  Hasher h(id);
  VectorStore store(n);
  switch (kind) {
    case LabellingKind::FULL_DEPENDENCY: full_dependency_labels(h, nonce, n, store); break;
    case LabellingKind::STACKED_BITREVERSAL: stacked_bitreversal_labels(h, nonce, n, layers, store); break;
    case LabellingKind::CHAIN: chain_labels(h, nonce, n, store); break;
  }
  return store.read(index);
}

}  // namespace erasure
