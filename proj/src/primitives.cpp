/*
 * Copyright 2026 The chebauth Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "chebauth/primitives.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>
#include <stdexcept>

namespace chebauth {

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

BitString digest(std::uint8_t domain, ByteView data, std::size_t width_bits) {
  check_width(width_bits);
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  std::array<std::uint8_t, EVP_MAX_MD_SIZE> md{};
  unsigned int md_len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), &domain, 1) != 1 ||
      (!data.empty() &&
       EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1) ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &md_len) != 1) {
    throw std::runtime_error("SHA-256 evaluation failed");
  }
  return BitString::from_bytes(ByteView(md.data(), width_bits / 8));
}

}  // namespace

void append_canonical(Bytes& out, const FieldElement& e) {
  Bytes encoded = e.to_bytes();
  out.insert(out.end(), encoded.begin(), encoded.end());
}

void append_canonical(Bytes& out, Timestamp t) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(t.ticks >> shift));
  }
}

Bytes concat_list(std::span<const Bytes> parts) {
  Bytes out;
  for (const Bytes& part : parts) append_canonical(out, part);
  return out;
}

BitString hash_h(ByteView data, std::size_t width_bits, OpCounts& counts) {
  ++counts.n_hash;
  return digest(kDomainSmallHash, data, width_bits);
}

BitString hash_H(const FieldElement& a, const FieldElement& b,
                 const FieldElement& c, std::size_t width_bits,
                 OpCounts& counts) {
  ++counts.n_hash;
  return digest(kDomainSessionHash, concat(a, b, c), width_bits);
}

BitString xor_bits(const BitString& a, const BitString& b, OpCounts& counts) {
  BitString out = xor_uncounted(a, b);
  ++counts.n_xor;
  return out;
}

FieldElement cheb_eval(std::uint64_t n, const FieldElement& x,
                       OpCounts& counts) {
  ++counts.n_cheb;
  return cheb_eval(n, x);
}

BitString RandomSource::draw_bits(std::size_t width_bits) {
  check_width(width_bits);
  Bytes out;
  out.reserve(width_bits / 8 + 8);
  while (out.size() < width_bits / 8) {
    std::uint64_t word = engine_();
    for (int shift = 56; shift >= 0; shift -= 8) {
      out.push_back(static_cast<std::uint8_t>(word >> shift));
    }
  }
  out.resize(width_bits / 8);
  return BitString::from_bytes(out);
}

std::uint64_t RandomSource::draw_exponent() {
  for (;;) {
    std::uint64_t e = engine_();
    if (e >= 2) return e;
  }
}

std::uint64_t RandomSource::draw_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("draw_below: bound must be > 0");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = engine_();
    if (v < limit) return v % bound;
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over a stream-offset seed.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace chebauth
