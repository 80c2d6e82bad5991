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

#ifndef CHEBAUTH_BITSTRING_HPP_
#define CHEBAUTH_BITSTRING_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chebauth {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Raised when two bit strings of different widths are combined.
class WidthMismatch : public std::invalid_argument {
 public:
  WidthMismatch(std::size_t lhs_bits, std::size_t rhs_bits);
};

// Largest supported protocol width; every digest is truncated to at most this.
inline constexpr std::size_t kMaxWidthBits = 256;
inline constexpr std::size_t kDefaultWidthBits = 256;

// Throws std::invalid_argument unless width is a positive multiple of 8 and
// at most kMaxWidthBits.
void check_width(std::size_t width_bits);

/// Fixed-width bit vector, most significant bit first. The byte array is
/// the canonical serialization.
class BitString {
 public:
  BitString() = default;

  static BitString zero(std::size_t width_bits);
  static BitString from_bytes(ByteView bytes);
  static BitString from_hex(std::string_view hex);

  std::size_t width() const { return bytes_.size() * 8; }
  ByteView bytes() const { return bytes_; }
  std::string hex() const;
  bool is_zero() const;

  // Bit i counted from the most significant end.
  bool bit(std::size_t i) const;
  BitString with_flipped_bit(std::size_t i) const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  explicit BitString(Bytes bytes) : bytes_(std::move(bytes)) {}
  friend BitString xor_uncounted(const BitString& a, const BitString& b);

  Bytes bytes_;
};

// Bitwise XOR without touching any operation counter. Protocol code uses the
// counted xor_bits() from primitives.hpp instead.
BitString xor_uncounted(const BitString& a, const BitString& b);

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace chebauth

#endif  // CHEBAUTH_BITSTRING_HPP_
