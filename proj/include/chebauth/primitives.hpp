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

#ifndef CHEBAUTH_PRIMITIVES_HPP_
#define CHEBAUTH_PRIMITIVES_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "chebauth/bitstring.hpp"
#include "chebauth/chaotic_map.hpp"

namespace chebauth {

inline constexpr std::string_view kDigestName = "SHA-256";

// Domain-separation prefixes placed in front of every digest input.
inline constexpr std::uint8_t kDomainSmallHash = 0x01;  // h
inline constexpr std::uint8_t kDomainSessionHash = 0x02;  // H

/// Logical time in ticks.
struct Timestamp {
  std::uint64_t ticks = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// Tallies of primitive evaluations. Callers own an instance and pass it to
/// every counted primitive; nothing is accumulated globally.
struct OpCounts {
  std::uint64_t n_hash = 0;
  std::uint64_t n_xor = 0;
  std::uint64_t n_cheb = 0;

  OpCounts& operator+=(const OpCounts& other) {
    n_hash += other.n_hash;
    n_xor += other.n_xor;
    n_cheb += other.n_cheb;
    return *this;
  }
  friend OpCounts operator+(OpCounts a, const OpCounts& b) { return a += b; }
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

// Canonical encodings used inside every concatenation.
inline void append_canonical(Bytes& out, ByteView raw) {
  out.insert(out.end(), raw.begin(), raw.end());
}
inline void append_canonical(Bytes& out, std::string_view raw) {
  append_canonical(out, as_bytes(raw));
}
inline void append_canonical(Bytes& out, const Bytes& raw) {
  append_canonical(out, ByteView(raw));
}
inline void append_canonical(Bytes& out, const BitString& s) {
  append_canonical(out, s.bytes());
}
void append_canonical(Bytes& out, const FieldElement& e);
void append_canonical(Bytes& out, Timestamp t);

template <typename T>
Bytes serialize(const T& value) {
  Bytes out;
  append_canonical(out, value);
  return out;
}

/// Ordered concatenation of canonical encodings, e.g.
/// concat(k, im1, im2, tu_k, t1). Parts are not length-prefixed.
template <typename... Parts>
Bytes concat(const Parts&... parts) {
  Bytes out;
  (append_canonical(out, parts), ...);
  return out;
}

Bytes concat_list(std::span<const Bytes> parts);

// Digest of 0x01 || data, truncated to width_bits.
BitString hash_h(ByteView data, std::size_t width_bits, OpCounts& counts);

// Digest of 0x02 || a || b || c, truncated to width_bits.
BitString hash_H(const FieldElement& a, const FieldElement& b,
                 const FieldElement& c, std::size_t width_bits,
                 OpCounts& counts);

// Throws WidthMismatch on unequal widths.
BitString xor_bits(const BitString& a, const BitString& b, OpCounts& counts);

// Counted wrapper around the pure cheb_eval.
FieldElement cheb_eval(std::uint64_t n, const FieldElement& x, OpCounts& counts);

/// Deterministic random stream over std::mt19937_64. Only raw 64-bit words
/// are consumed. Each simulated party holds its own instance.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;
  RandomSource(RandomSource&&) = default;
  RandomSource& operator=(RandomSource&&) = default;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  BitString draw_bits(std::size_t width_bits);
  // Uniform in [2, 2^64).
  std::uint64_t draw_exponent();
  // Uniform in [0, bound); bound must be positive.
  std::uint64_t draw_below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a run seed and a stream index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Monotone logical clock.
class LogicalClock {
 public:
  explicit LogicalClock(Timestamp start = {}) : now_(start) {}

  Timestamp now() const { return now_; }
  void advance(std::uint64_t ticks) { now_.ticks += ticks; }

 private:
  Timestamp now_;
};

}  // namespace chebauth

#endif  // CHEBAUTH_PRIMITIVES_HPP_
