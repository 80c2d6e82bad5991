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

#include "chebauth/bitstring.hpp"

#include <algorithm>

namespace chebauth {

WidthMismatch::WidthMismatch(std::size_t lhs_bits, std::size_t rhs_bits)
    : std::invalid_argument("bit string width mismatch: " +
                            std::to_string(lhs_bits) + " vs " +
                            std::to_string(rhs_bits)) {}

void check_width(std::size_t width_bits) {
  if (width_bits == 0 || width_bits % 8 != 0 || width_bits > kMaxWidthBits) {
    throw std::invalid_argument(
        "bit width must be a positive multiple of 8 and at most " +
        std::to_string(kMaxWidthBits) + ", got " + std::to_string(width_bits));
  }
}

BitString BitString::zero(std::size_t width_bits) {
  check_width(width_bits);
  return BitString(Bytes(width_bits / 8, 0));
}

BitString BitString::from_bytes(ByteView bytes) {
  check_width(bytes.size() * 8);
  return BitString(Bytes(bytes.begin(), bytes.end()));
}

BitString BitString::from_hex(std::string_view hex) {
  return from_bytes(chebauth::from_hex(hex));
}

std::string BitString::hex() const { return to_hex(bytes_); }

bool BitString::is_zero() const {
  return std::all_of(bytes_.begin(), bytes_.end(),
                     [](std::uint8_t b) { return b == 0; });
}

bool BitString::bit(std::size_t i) const {
  if (i >= width()) throw std::out_of_range("bit index out of range");
  return (bytes_[i / 8] >> (7 - i % 8)) & 1U;
}

BitString BitString::with_flipped_bit(std::size_t i) const {
  if (i >= width()) throw std::out_of_range("bit index out of range");
  Bytes out = bytes_;
  out[i / 8] ^= static_cast<std::uint8_t>(0x80U >> (i % 8));
  return BitString(std::move(out));
}

BitString xor_uncounted(const BitString& a, const BitString& b) {
  if (a.width() != b.width()) throw WidthMismatch(a.width(), b.width());
  Bytes out(a.bytes_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.bytes_[i] ^ b.bytes_[i];
  }
  return BitString(std::move(out));
}

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw std::invalid_argument("hex string has odd length");
  }
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

}  // namespace chebauth
