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

#ifndef CHEBAUTH_CHAOTIC_MAP_HPP_
#define CHEBAUTH_CHAOTIC_MAP_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "chebauth/bitstring.hpp"

namespace chebauth {

// 2^256 - 2^32 - 977, the secp256k1 base-field prime.
inline constexpr std::string_view kDefaultPrimeDecimal =
    "115792089237316195423570985008687907853269984665640564039457584007908834671663";

class FieldElement;

/// Prime field Z_p on which the extended Chebyshev map is evaluated.
///
/// Construction validates the modulus (probabilistic primality with 50
/// Miller-Rabin rounds, p > 3). Instances are immutable and shared by every
/// element living in the field.
class PrimeField : public std::enable_shared_from_this<PrimeField> {
 public:
  static std::shared_ptr<const PrimeField> create(const mpz_class& modulus);
  static std::shared_ptr<const PrimeField> from_decimal(std::string_view p);
  // Cached field over kDefaultPrimeDecimal.
  static std::shared_ptr<const PrimeField> default_field();

  const mpz_class& modulus() const { return modulus_; }
  std::string modulus_decimal() const { return modulus_.get_str(10); }
  // Bytes in the canonical big-endian encoding of an element.
  std::size_t byte_width() const { return byte_width_; }

  // Reduces value into [0, p).
  FieldElement element(const mpz_class& value) const;
  FieldElement element(unsigned long value) const;

 private:
  explicit PrimeField(const mpz_class& modulus);

  mpz_class modulus_;
  std::size_t byte_width_;
};

/// An element of a PrimeField, always held in reduced form 0 <= value < p.
class FieldElement {
 public:
  FieldElement(std::shared_ptr<const PrimeField> field, const mpz_class& value);

  const mpz_class& value() const { return value_; }
  const PrimeField& field() const { return *field_; }
  std::shared_ptr<const PrimeField> field_ptr() const { return field_; }

  std::string decimal() const { return value_.get_str(10); }
  // Fixed-width big-endian, field().byte_width() bytes.
  Bytes to_bytes() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  std::shared_ptr<const PrimeField> field_;
  mpz_class value_;
};

/// T_n(x) mod p with T_0 = 1, T_1 = x, T_n = 2x T_{n-1} - T_{n-2}.
///
/// Uses the doubling identities T_{2k} = 2 T_k^2 - 1 and
/// T_{2k+1} = 2 T_k T_{k+1} - x, so the cost is two field multiplications
/// per bit of n. Pure; safe to call concurrently.
FieldElement cheb_eval(std::uint64_t n, const FieldElement& x);

// Big-endian unsigned reading of s, reduced mod p.
FieldElement bits_to_field(const BitString& s,
                           std::shared_ptr<const PrimeField> field);

}  // namespace chebauth

#endif  // CHEBAUTH_CHAOTIC_MAP_HPP_
